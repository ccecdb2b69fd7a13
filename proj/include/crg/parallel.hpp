#ifndef CRG_PARALLEL_HPP
#define CRG_PARALLEL_HPP

#include <exception>
#include <thread>
#include <vector>

namespace crg {

// Chunked parallel map over [0, count).  Each worker produces one partial
// result; partials are returned in chunk order so callers can fold them
// deterministically.  With exact arithmetic any regrouping of an
// associative fold is bit-identical, so thread count never changes output.
template <class T, class Worker>
std::vector<T> parallel_chunks(size_t count, int threads, Worker worker) {
    if (threads < 1) threads = 1;
    size_t nchunks = std::min<size_t>(static_cast<size_t>(threads), count == 0 ? 1 : count);
    std::vector<T> results(nchunks);
    if (nchunks <= 1) {
        results[0] = worker(0, count);
        return results;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errs(nchunks);
    size_t base = count / nchunks, extra = count % nchunks;
    size_t begin = 0;
    for (size_t k = 0; k < nchunks; ++k) {
        size_t len = base + (k < extra ? 1 : 0);
        size_t b = begin, e = begin + len;
        begin = e;
        pool.emplace_back([&, k, b, e]() {
            try {
                results[k] = worker(b, e);
            } catch (...) {
                errs[k] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (auto& err : errs)
        if (err) std::rethrow_exception(err);
    return results;
}

}  // namespace crg

#endif

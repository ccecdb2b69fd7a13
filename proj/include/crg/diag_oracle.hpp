#ifndef CRG_DIAG_ORACLE_HPP
#define CRG_DIAG_ORACLE_HPP

#include <map>
#include <optional>
#include <vector>

#include "crg/group.hpp"
#include "crg/multipoly.hpp"
#include "crg/parallel.hpp"

namespace crg {

struct BigradedEntry {
    long dim = 0;
    long det_full = 0;   // det-isotype dimension of the whole bidegree component
    long det_ideal = 0;  // det-isotype dimension of the ideal component
};

struct BigradedTable {
    std::map<std::pair<int, int>, BigradedEntry> entries;
    bool completed = false;
    long long total = 0;
    long det_multiplicity = 0;
    int last_antidiagonal = -1;

    long dim_at(int a, int b) const {
        auto it = entries.find({a, b});
        return it == entries.end() ? 0 : it->second.dim;
    }
    bool symmetric() const {
        for (const auto& [key, e] : entries)
            if (e.dim != dim_at(key.second, key.first)) return false;
        return true;
    }
    long long margin_x() const {  // column b = 0
        long long s = 0;
        for (const auto& [key, e] : entries)
            if (key.second == 0) s += e.dim;
        return s;
    }
    long long margin_y() const {  // row a = 0
        long long s = 0;
        for (const auto& [key, e] : entries)
            if (key.first == 0) s += e.dim;
        return s;
    }
};

// Brute-force bigraded Hilbert series of the diagonal coinvariant ring:
// 2n variables, x's of bidegree (1,0) carrying the defining action and y's
// of bidegree (0,1) carrying the dual action.  The ideal component in each
// bidegree is spanned by monomial multiples of averaged monomials
// (invariants) of lower positive bidegree; dimensions drop out by exact
// rank.  No Groebner bases.
class DiagOracle {
public:
    explicit DiagOracle(const ReflectionGroup& G, long order_cap = 50, int threads = 1)
        : G_(G), threads_(threads) {
        if (G.order() > order_cap)
            throw std::invalid_argument("DiagOracle: group order " + std::to_string(G.order()) +
                                        " exceeds cap " + std::to_string(order_cap));
        const unsigned n = G_.rank();
        for (long wi = 0; wi < G_.order(); ++wi) {
            const CycMatrix& M = G_.element(static_cast<int>(wi));
            CycMatrix Minv = G_.element(G_.inverse_index(static_cast<int>(wi)));
            // x_j -> column j of M (defining), y_j -> row j of M^{-1} (dual)
            std::vector<std::vector<CycNumber>> rows(2 * n,
                                                     std::vector<CycNumber>(2 * n, CycNumber::zero(G_.field())));
            for (unsigned j = 0; j < n; ++j)
                for (unsigned i = 0; i < n; ++i) {
                    rows[j][i] = M.at(i, j);
                    rows[n + j][n + i] = Minv.at(j, i);
                }
            subs_.push_back(std::move(rows));
        }
    }

    const ReflectionGroup& group() const { return G_; }

    // Basis (as echelonized coefficient rows) of the W-invariant subspace
    // in bidegree (a, b).
    const CycMatrix& invariant_component(int a, int b) {
        auto key = std::make_pair(a, b);
        auto it = inv_cache_.find(key);
        if (it != inv_cache_.end()) return it->second;
        const CycField* F = G_.field();
        MonomialBasis basis = basis_at(a, b);
        CycMatrix avg(F, basis.size(), basis.size());
        auto chunks = parallel_chunks<std::vector<std::vector<CycNumber>>>(
            basis.size(), threads_, [&](size_t lo, size_t hi) {
                std::vector<std::vector<CycNumber>> out;
                for (size_t c = lo; c < hi; ++c) {
                    MultiPoly mono = MultiPoly::monomial(F, basis.list[c], CycNumber::one(F));
                    MultiPoly acc(F, mono.nvars());
                    for (long wi = 0; wi < G_.order(); ++wi)
                        acc = acc + mono.substitute_linear(subs_[static_cast<size_t>(wi)]);
                    out.push_back(acc.to_vector(basis.index, basis.size()));
                }
                return out;
            });
        unsigned col = 0;
        for (const auto& chunk : chunks)
            for (const auto& v : chunk) {
                for (unsigned r = 0; r < basis.size(); ++r) avg.at(r, col) = v[r];
                ++col;
            }
        // rows of the echelon form of the transposed averages = basis of the span
        CycMatrix rows = avg.transpose();
        unsigned rank = rows.echelonize();
        CycMatrix out(F, rank, basis.size());
        for (unsigned r = 0; r < rank; ++r)
            for (unsigned c = 0; c < basis.size(); ++c) out.at(r, c) = rows.at(r, c);
        return inv_cache_.emplace(key, std::move(out)).first->second;
    }

    BigradedTable hilbert_table(long antidiag_cap = 0) {
        if (antidiag_cap <= 0)
            antidiag_cap = 4 * static_cast<long>(G_.reflection_indices().size());
        BigradedTable table;
        for (int s = 0; s <= antidiag_cap; ++s) {
            std::vector<std::pair<int, int>> bidegrees;
            for (int a = s; a >= 0; --a) bidegrees.emplace_back(a, s - a);
            // invariant components are cached sequentially first so the
            // per-bidegree work below is read-only
            for (auto [a, b] : bidegrees) invariant_component(a, b);
            bool all_zero = (s > 0);
            for (auto [a, b] : bidegrees) {
                BigradedEntry e = compute_entry(a, b);
                if (e.dim != 0) all_zero = false;
                table.entries[{a, b}] = e;
                table.total += e.dim;
                table.det_multiplicity += e.det_full - e.det_ideal;
            }
            table.last_antidiagonal = s;
            if (all_zero) {
                // drop the terminal all-zero antidiagonal from the table
                for (auto [a, b] : bidegrees) table.entries.erase({a, b});
                table.completed = true;
                break;
            }
        }
        if (!table.completed)
            throw std::runtime_error("DiagOracle: antidiagonal cap reached before the table closed");
        return table;
    }

    // Extra zero-propagation probe: every bidegree on the antidiagonal
    // following the terminal one must also vanish.
    bool zero_beyond(const BigradedTable& table) {
        int s = table.last_antidiagonal + 1;
        for (int a = s; a >= 0; --a)
            if (compute_entry(a, s - a).dim != 0) return false;
        return true;
    }

    BigradedEntry compute_entry(int a, int b) {
        const CycField* F = G_.field();
        MonomialBasis basis = basis_at(a, b);
        BigradedEntry e;
        if (a == 0 && b == 0) {
            e.dim = 1;
            return e;
        }
        // ideal component: span of monomial * invariant over positive
        // bidegrees (a', b') <= (a, b)
        std::vector<std::vector<CycNumber>> span;
        for (int ap = 0; ap <= a; ++ap)
            for (int bp = 0; bp <= b; ++bp) {
                if (ap == 0 && bp == 0) continue;
                const CycMatrix& inv = invariant_component(ap, bp);
                if (inv.rows() == 0) continue;
                MonomialBasis inv_basis = basis_at(ap, bp);
                MonomialBasis mono_basis = basis_at(a - ap, b - bp);
                for (unsigned r = 0; r < inv.rows(); ++r) {
                    MultiPoly f(F, 2 * static_cast<int>(G_.rank()));
                    for (unsigned c = 0; c < inv.cols(); ++c)
                        f.add_term(inv_basis.list[c], inv.at(r, c));
                    for (const auto& me : mono_basis.list) {
                        MultiPoly prod = f * MultiPoly::monomial(F, me, CycNumber::one(F));
                        span.push_back(prod.to_vector(basis.index, basis.size()));
                    }
                }
            }
        CycMatrix ideal(F, static_cast<unsigned>(span.size()), basis.size());
        for (unsigned r = 0; r < span.size(); ++r)
            for (unsigned c = 0; c < basis.size(); ++c) ideal.at(r, c) = span[r][c];
        unsigned ideal_rank = ideal.echelonize();
        e.dim = static_cast<long>(basis.size()) - static_cast<long>(ideal_rank);

        // det-isotype dimensions: projector weight det(w)^{-1} on the
        // diagonal action
        CycMatrix P(F, basis.size(), basis.size());
        for (long wi = 0; wi < G_.order(); ++wi) {
            CycMatrix act = action_matrix(basis, static_cast<int>(wi));
            P = P + act * G_.det_of(static_cast<int>(wi)).inverse();
        }
        P = P * CycNumber::from_rational(F, Rational(1, G_.order()));
        e.det_full = static_cast<long>(P.rank());
        if (ideal_rank > 0) {
            CycMatrix proj_ideal(F, ideal_rank, basis.size());
            // P * v for each (echelonized) ideal row v
            for (unsigned r = 0; r < ideal_rank; ++r)
                for (unsigned i = 0; i < basis.size(); ++i) {
                    CycNumber acc = CycNumber::zero(F);
                    for (unsigned j = 0; j < basis.size(); ++j) {
                        if (P.at(i, j).is_zero() || ideal.at(r, j).is_zero()) continue;
                        acc += P.at(i, j) * ideal.at(r, j);
                    }
                    proj_ideal.at(r, i) = acc;
                }
            e.det_ideal = static_cast<long>(proj_ideal.rank());
        }
        return e;
    }

private:
    MonomialBasis basis_at(int a, int b) const {
        return monomials_of_bidegree(static_cast<int>(G_.rank()), a, b);
    }

    CycMatrix action_matrix(const MonomialBasis& basis, int wi) {
        const CycField* F = G_.field();
        CycMatrix m(F, basis.size(), basis.size());
        for (unsigned c = 0; c < basis.size(); ++c) {
            MultiPoly mono = MultiPoly::monomial(F, basis.list[c], CycNumber::one(F));
            auto v = mono.substitute_linear(subs_[static_cast<size_t>(wi)]).to_vector(basis.index, basis.size());
            for (unsigned r = 0; r < basis.size(); ++r) m.at(r, c) = v[r];
        }
        return m;
    }

    const ReflectionGroup& G_;
    int threads_;
    std::vector<std::vector<std::vector<CycNumber>>> subs_;
    std::map<std::pair<int, int>, CycMatrix> inv_cache_;
};

}  // namespace crg

#endif

#ifndef CRG_MATRIX_HPP
#define CRG_MATRIX_HPP

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "crg/cyclotomic.hpp"

namespace crg {

// Dense matrix over one fixed cyclotomic field.  Ranks and inverses are
// computed by exact Gaussian elimination with deterministic pivoting
// (first nonzero entry in column order), so results are reproducible.
class CycMatrix {
public:
    CycMatrix() : F_(nullptr), rows_(0), cols_(0) {}
    CycMatrix(const CycField* F, unsigned rows, unsigned cols)
        : F_(F), rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols, CycNumber::zero(F)) {}

    static CycMatrix identity(const CycField* F, unsigned k) {
        CycMatrix m(F, k, k);
        for (unsigned i = 0; i < k; ++i) m.at(i, i) = CycNumber::one(F);
        return m;
    }

    const CycField* field() const { return F_; }
    unsigned rows() const { return rows_; }
    unsigned cols() const { return cols_; }

    CycNumber& at(unsigned i, unsigned j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const CycNumber& at(unsigned i, unsigned j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    friend CycMatrix operator*(const CycMatrix& a, const CycMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("CycMatrix: shape mismatch in product");
        CycMatrix out(a.F_, a.rows_, b.cols_);
        for (unsigned i = 0; i < a.rows_; ++i)
            for (unsigned k = 0; k < a.cols_; ++k) {
                const CycNumber& x = a.at(i, k);
                if (x.is_zero()) continue;
                for (unsigned j = 0; j < b.cols_; ++j) {
                    if (b.at(k, j).is_zero()) continue;
                    out.at(i, j) += x * b.at(k, j);
                }
            }
        return out;
    }
    friend CycMatrix operator+(const CycMatrix& a, const CycMatrix& b) {
        check_same_shape(a, b);
        CycMatrix out = a;
        for (size_t i = 0; i < out.a_.size(); ++i) out.a_[i] += b.a_[i];
        return out;
    }
    friend CycMatrix operator-(const CycMatrix& a, const CycMatrix& b) {
        check_same_shape(a, b);
        CycMatrix out = a;
        for (size_t i = 0; i < out.a_.size(); ++i) out.a_[i] -= b.a_[i];
        return out;
    }
    friend CycMatrix operator*(const CycMatrix& a, const CycNumber& s) {
        CycMatrix out = a;
        for (auto& x : out.a_) x *= s;
        return out;
    }
    friend bool operator==(const CycMatrix& a, const CycMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
    }
    friend bool operator!=(const CycMatrix& a, const CycMatrix& b) { return !(a == b); }

    CycMatrix transpose() const {
        CycMatrix out(F_, cols_, rows_);
        for (unsigned i = 0; i < rows_; ++i)
            for (unsigned j = 0; j < cols_; ++j) out.at(j, i) = at(i, j);
        return out;
    }

    CycNumber trace() const {
        if (rows_ != cols_) throw std::invalid_argument("CycMatrix: trace of non-square");
        CycNumber t = CycNumber::zero(F_);
        for (unsigned i = 0; i < rows_; ++i) t += at(i, i);
        return t;
    }

    unsigned rank() const {
        CycMatrix m = *this;
        return m.echelonize();
    }

    CycNumber det() const {
        if (rows_ != cols_) throw std::invalid_argument("CycMatrix: det of non-square");
        CycMatrix m = *this;
        CycNumber d = CycNumber::one(F_);
        unsigned row = 0;
        for (unsigned col = 0; col < cols_ && row < rows_; ++col) {
            unsigned p = row;
            while (p < rows_ && m.at(p, col).is_zero()) ++p;
            if (p == rows_) return CycNumber::zero(F_);
            if (p != row) {
                m.swap_rows(p, row);
                d = -d;
            }
            d *= m.at(row, col);
            CycNumber inv = m.at(row, col).inverse();
            for (unsigned r = row + 1; r < rows_; ++r) {
                if (m.at(r, col).is_zero()) continue;
                CycNumber f = m.at(r, col) * inv;
                for (unsigned c = col; c < cols_; ++c) m.at(r, c) -= f * m.at(row, c);
            }
            ++row;
        }
        return d;
    }

    CycMatrix inverse() const {
        if (rows_ != cols_) throw std::invalid_argument("CycMatrix: inverse of non-square");
        CycMatrix m = *this;
        CycMatrix inv = identity(F_, rows_);
        for (unsigned col = 0; col < cols_; ++col) {
            unsigned p = col;
            while (p < rows_ && m.at(p, col).is_zero()) ++p;
            if (p == rows_) throw std::domain_error("CycMatrix: singular matrix");
            if (p != col) {
                m.swap_rows(p, col);
                inv.swap_rows(p, col);
            }
            CycNumber s = m.at(col, col).inverse();
            for (unsigned c = 0; c < cols_; ++c) {
                m.at(col, c) *= s;
                inv.at(col, c) *= s;
            }
            for (unsigned r = 0; r < rows_; ++r) {
                if (r == col || m.at(r, col).is_zero()) continue;
                CycNumber f = m.at(r, col);
                for (unsigned c = 0; c < cols_; ++c) {
                    m.at(r, c) -= f * m.at(col, c);
                    inv.at(r, c) -= f * inv.at(col, c);
                }
            }
        }
        return inv;
    }

    // Basis of the right kernel, as columns; deterministic.
    std::vector<std::vector<CycNumber>> kernel_basis() const {
        CycMatrix m = *this;
        std::vector<int> pivot_col;
        m.echelonize(&pivot_col);
        std::vector<bool> is_pivot(cols_, false);
        for (int c : pivot_col) is_pivot[static_cast<unsigned>(c)] = true;
        std::vector<std::vector<CycNumber>> basis;
        for (unsigned free = 0; free < cols_; ++free) {
            if (is_pivot[free]) continue;
            std::vector<CycNumber> v(cols_, CycNumber::zero(F_));
            v[free] = CycNumber::one(F_);
            // reduced echelon: pivot rows directly give the dependent coordinates
            for (size_t r = 0; r < pivot_col.size(); ++r)
                v[static_cast<unsigned>(pivot_col[r])] = -m.at(static_cast<unsigned>(r), free);
            basis.push_back(std::move(v));
        }
        return basis;
    }

    void swap_rows(unsigned i, unsigned j) {
        if (i == j) return;
        for (unsigned c = 0; c < cols_; ++c) std::swap(at(i, c), at(j, c));
    }

    std::string to_key() const {
        std::ostringstream os;
        for (const auto& x : a_) os << x.to_key() << ';';
        return os.str();
    }

    // In-place reduced row echelon form; returns rank, optionally reports
    // pivot columns in order.
    unsigned echelonize(std::vector<int>* pivot_cols = nullptr) {
        unsigned row = 0;
        for (unsigned col = 0; col < cols_ && row < rows_; ++col) {
            unsigned p = row;
            while (p < rows_ && at(p, col).is_zero()) ++p;
            if (p == rows_) continue;
            swap_rows(p, row);
            CycNumber s = at(row, col).inverse();
            for (unsigned c = col; c < cols_; ++c) at(row, c) *= s;
            for (unsigned r = 0; r < rows_; ++r) {
                if (r == row || at(r, col).is_zero()) continue;
                CycNumber f = at(r, col);
                for (unsigned c = col; c < cols_; ++c) at(r, c) -= f * at(row, c);
            }
            if (pivot_cols) pivot_cols->push_back(static_cast<int>(col));
            ++row;
        }
        return row;
    }

private:
    static void check_same_shape(const CycMatrix& a, const CycMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("CycMatrix: shape mismatch");
    }

    const CycField* F_;
    unsigned rows_, cols_;
    std::vector<CycNumber> a_;
};

inline unsigned exact_rank(const CycMatrix& m) { return m.rank(); }

// All k-element subsets of {0..n-1} in lexicographic order.
inline std::vector<std::vector<unsigned>> subsets_lex(unsigned n, unsigned k) {
    std::vector<std::vector<unsigned>> out;
    std::vector<unsigned> cur;
    std::function<void(unsigned)> rec = [&](unsigned start) {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (unsigned i = start; i + (k - cur.size()) <= n; ++i) {
            cur.push_back(i);
            rec(i + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

// Matrix of the k-th exterior power: entries are k x k minors indexed by
// lexicographic k-subsets of rows/columns.
inline CycMatrix exterior_power(const CycMatrix& m, unsigned k) {
    if (m.rows() != m.cols()) throw std::invalid_argument("exterior_power: non-square");
    auto subs = subsets_lex(m.rows(), k);
    CycMatrix out(m.field(), static_cast<unsigned>(subs.size()), static_cast<unsigned>(subs.size()));
    for (unsigned i = 0; i < subs.size(); ++i)
        for (unsigned j = 0; j < subs.size(); ++j) {
            CycMatrix minor(m.field(), k, k);
            for (unsigned r = 0; r < k; ++r)
                for (unsigned c = 0; c < k; ++c) minor.at(r, c) = m.at(subs[i][r], subs[j][c]);
            out.at(i, j) = minor.det();
        }
    return out;
}

}  // namespace crg

#endif

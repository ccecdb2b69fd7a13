#ifndef CRG_MULTIPOLY_HPP
#define CRG_MULTIPOLY_HPP

#include <map>
#include <vector>

#include "crg/matrix.hpp"

namespace crg {

using Exps = std::vector<int>;

// Sparse multivariate polynomial with cyclotomic coefficients.  Terms are
// kept in a map with lexicographic key order and no explicit zeros, so the
// representation is canonical.
class MultiPoly {
public:
    MultiPoly(const CycField* F, int nvars) : F_(F), nvars_(nvars) {}

    static MultiPoly monomial(const CycField* F, const Exps& e, const CycNumber& coeff) {
        MultiPoly p(F, static_cast<int>(e.size()));
        if (!coeff.is_zero()) p.terms_[e] = coeff;
        return p;
    }
    static MultiPoly constant(const CycField* F, int nvars, const CycNumber& coeff) {
        return monomial(F, Exps(static_cast<size_t>(nvars), 0), coeff);
    }

    const CycField* field() const { return F_; }
    int nvars() const { return nvars_; }
    const std::map<Exps, CycNumber>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    long degree() const {
        long d = -1;
        for (const auto& [e, c] : terms_) {
            long t = 0;
            for (int x : e) t += x;
            d = std::max(d, t);
        }
        return d;
    }

    void add_term(const Exps& e, const CycNumber& c) {
        if (c.is_zero()) return;
        auto it = terms_.find(e);
        if (it == terms_.end()) {
            terms_.emplace(e, c);
        } else {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    friend MultiPoly operator+(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly out = a;
        for (const auto& [e, c] : b.terms_) out.add_term(e, c);
        return out;
    }
    friend MultiPoly operator-(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly out = a;
        for (const auto& [e, c] : b.terms_) out.add_term(e, -c);
        return out;
    }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
        MultiPoly out(a.F_, a.nvars_);
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) {
                Exps e(ea);
                for (size_t i = 0; i < e.size(); ++i) e[i] += eb[i];
                out.add_term(e, ca * cb);
            }
        return out;
    }
    MultiPoly scale(const CycNumber& s) const {
        MultiPoly out(F_, nvars_);
        if (s.is_zero()) return out;
        for (const auto& [e, c] : terms_) out.terms_[e] = c * s;
        return out;
    }
    MultiPoly operator-() const { return scale(-CycNumber::one(F_)); }

    friend bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }
    friend bool operator!=(const MultiPoly& a, const MultiPoly& b) { return !(a == b); }

    MultiPoly derivative(int var) const {
        MultiPoly out(F_, nvars_);
        for (const auto& [e, c] : terms_) {
            if (e[static_cast<size_t>(var)] == 0) continue;
            Exps d(e);
            long k = d[static_cast<size_t>(var)]--;
            out.add_term(d, c * Rational(k));
        }
        return out;
    }

    // substitute var_j -> sum_k S[j][k] var_k, extended multiplicatively
    MultiPoly substitute_linear(const std::vector<std::vector<CycNumber>>& S) const {
        MultiPoly out(F_, nvars_);
        for (const auto& [e, c] : terms_) {
            MultiPoly acc = constant(F_, nvars_, c);
            for (int j = 0; j < nvars_; ++j) {
                int k = e[static_cast<size_t>(j)];
                if (k == 0) continue;
                MultiPoly lin(F_, nvars_);
                for (int t = 0; t < nvars_; ++t) {
                    if (S[static_cast<size_t>(j)][static_cast<size_t>(t)].is_zero()) continue;
                    Exps ev(static_cast<size_t>(nvars_), 0);
                    ev[static_cast<size_t>(t)] = 1;
                    lin.add_term(ev, S[static_cast<size_t>(j)][static_cast<size_t>(t)]);
                }
                MultiPoly pw = lin;
                for (int rep = 1; rep < k; ++rep) pw = pw * lin;
                acc = acc * pw;
            }
            out = out + acc;
        }
        return out;
    }

    // Exact division by a linear form; throws if the division leaves a
    // remainder (a zero-divisibility invariant of the Dunkl terms).
    MultiPoly divide_by_linear(const std::vector<CycNumber>& alpha) const {
        int pivot = -1;
        for (size_t i = 0; i < alpha.size(); ++i)
            if (!alpha[i].is_zero()) {
                pivot = static_cast<int>(i);
                break;
            }
        if (pivot < 0) throw std::invalid_argument("divide_by_linear: zero form");
        CycNumber lead_inv = alpha[static_cast<size_t>(pivot)].inverse();
        MultiPoly rem = *this;
        MultiPoly quot(F_, nvars_);
        while (!rem.is_zero()) {
            // maximal term: highest pivot exponent, lex tie-break
            auto best = rem.terms_.begin();
            for (auto it = rem.terms_.begin(); it != rem.terms_.end(); ++it) {
                int pe = it->first[static_cast<size_t>(pivot)];
                int be = best->first[static_cast<size_t>(pivot)];
                if (pe > be || (pe == be && it->first > best->first)) best = it;
            }
            if (best->first[static_cast<size_t>(pivot)] == 0)
                throw std::logic_error("divide_by_linear: inexact division");
            Exps qe(best->first);
            qe[static_cast<size_t>(pivot)] -= 1;
            CycNumber qc = best->second * lead_inv;
            quot.add_term(qe, qc);
            // rem -= alpha * (qc * x^qe)
            for (size_t t = 0; t < alpha.size(); ++t) {
                if (alpha[t].is_zero()) continue;
                Exps e(qe);
                e[t] += 1;
                rem.add_term(e, -(alpha[t] * qc));
            }
        }
        return quot;
    }

    CycNumber constant_term() const {
        Exps zero(static_cast<size_t>(nvars_), 0);
        auto it = terms_.find(zero);
        return it == terms_.end() ? CycNumber::zero(F_) : it->second;
    }

    std::vector<CycNumber> to_vector(const std::map<Exps, int>& index, unsigned size) const {
        std::vector<CycNumber> v(size, CycNumber::zero(F_));
        for (const auto& [e, c] : terms_) {
            auto it = index.find(e);
            if (it == index.end()) throw std::logic_error("MultiPoly::to_vector: monomial outside basis");
            v[static_cast<size_t>(it->second)] = c;
        }
        return v;
    }

private:
    const CycField* F_;
    int nvars_;
    std::map<Exps, CycNumber> terms_;
};

// Monomial basis of a fixed degree (or bidegree) component, with index map.
struct MonomialBasis {
    std::vector<Exps> list;
    std::map<Exps, int> index;

    unsigned size() const { return static_cast<unsigned>(list.size()); }

    void push(const Exps& e) {
        index.emplace(e, static_cast<int>(list.size()));
        list.push_back(e);
    }
};

namespace detail {
inline void enum_degree_rec(int nvars, int pos, int remaining, Exps& cur, std::vector<Exps>& out) {
    if (pos == nvars - 1) {
        cur[static_cast<size_t>(pos)] = remaining;
        out.push_back(cur);
        return;
    }
    for (int e = remaining; e >= 0; --e) {
        cur[static_cast<size_t>(pos)] = e;
        enum_degree_rec(nvars, pos + 1, remaining - e, cur, out);
    }
}
}  // namespace detail

inline MonomialBasis monomials_of_degree(int nvars, int d) {
    MonomialBasis b;
    if (nvars == 0 || d < 0) return b;
    Exps cur(static_cast<size_t>(nvars), 0);
    std::vector<Exps> all;
    detail::enum_degree_rec(nvars, 0, d, cur, all);
    for (const auto& e : all) b.push(e);
    return b;
}

// Monomials x^a y^b in 2n variables with |a| = xdeg and |b| = ydeg.
inline MonomialBasis monomials_of_bidegree(int n, int xdeg, int ydeg) {
    MonomialBasis b;
    MonomialBasis bx = monomials_of_degree(n, xdeg);
    MonomialBasis by = monomials_of_degree(n, ydeg);
    for (const auto& ex : bx.list)
        for (const auto& ey : by.list) {
            Exps e(ex);
            e.insert(e.end(), ey.begin(), ey.end());
            b.push(e);
        }
    return b;
}

}  // namespace crg

#endif

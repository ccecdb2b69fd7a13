#ifndef CRG_SERIES_HPP
#define CRG_SERIES_HPP

#include <stdexcept>
#include <string>
#include <vector>

#include "crg/matrix.hpp"

namespace crg {

// Dense univariate polynomial over K (K = Rational or CycNumber).  The
// coefficient vector is kept trimmed; an empty vector is the zero polynomial.
template <class K>
struct Poly {
    std::vector<K> c;

    Poly() = default;
    explicit Poly(std::vector<K> coeffs) : c(std::move(coeffs)) { trim(); }
    static Poly constant(const K& k) { return Poly(std::vector<K>{k}); }

    bool is_zero() const { return c.empty(); }
    long degree() const { return static_cast<long>(c.size()) - 1; }

    void trim() {
        while (!c.empty() && c.back().is_zero()) c.pop_back();
    }

    friend Poly operator+(const Poly& a, const Poly& b) {
        Poly out;
        out.c.resize(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < out.c.size(); ++i) {
            if (i < a.c.size() && i < b.c.size()) out.c[i] = a.c[i] + b.c[i];
            else if (i < a.c.size()) out.c[i] = a.c[i];
            else out.c[i] = b.c[i];
        }
        out.trim();
        return out;
    }
    friend Poly operator-(const Poly& a, const Poly& b) {
        Poly out;
        out.c.resize(std::max(a.c.size(), b.c.size()));
        for (size_t i = 0; i < out.c.size(); ++i) {
            if (i < a.c.size() && i < b.c.size()) out.c[i] = a.c[i] - b.c[i];
            else if (i < a.c.size()) out.c[i] = a.c[i];
            else out.c[i] = -b.c[i];
        }
        out.trim();
        return out;
    }
    friend Poly operator*(const Poly& a, const Poly& b) {
        if (a.is_zero() || b.is_zero()) return Poly();
        Poly out;
        out.c.assign(a.c.size() + b.c.size() - 1, a.c[0].zero_like());
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i].is_zero()) continue;
            for (size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
        }
        out.trim();
        return out;
    }

    // substitute t -> t^d
    Poly spread(unsigned d) const {
        if (is_zero() || d == 1) return *this;
        Poly out;
        out.c.assign((c.size() - 1) * d + 1, c[0].zero_like());
        for (size_t i = 0; i < c.size(); ++i) out.c[i * d] = c[i];
        return out;
    }

    K eval_one() const {
        if (c.empty()) throw std::domain_error("Poly::eval_one on zero polynomial needs an exemplar");
        K s = c[0].zero_like();
        for (const auto& x : c) s += x;
        return s;
    }

    std::string to_string() const {
        if (c.empty()) return "0";
        std::string s;
        bool first = true;
        for (size_t i = 0; i < c.size(); ++i) {
            if (c[i].is_zero()) continue;
            if (!first) s += " + ";
            s += "(" + c[i].to_string() + ")";
            if (i == 1) s += "*t";
            else if (i > 1) s += "*t^" + std::to_string(i);
            first = false;
        }
        return first ? "0" : s;
    }
};

// Power series truncated at order T: coefficients for t^0 .. t^T.
template <class K>
struct TruncSeries {
    unsigned T = 0;
    std::vector<K> c;  // length T+1

    TruncSeries() = default;
    TruncSeries(unsigned trunc, const K& zero) : T(trunc), c(trunc + 1, zero) {}

    static TruncSeries from_poly(const Poly<K>& p, unsigned trunc, const K& zero) {
        TruncSeries s(trunc, zero);
        for (size_t i = 0; i < p.c.size() && i <= trunc; ++i) s.c[i] = p.c[i];
        return s;
    }

    friend TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
        check(a, b);
        TruncSeries out = a;
        for (size_t i = 0; i < out.c.size(); ++i) out.c[i] += b.c[i];
        return out;
    }
    friend TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
        check(a, b);
        TruncSeries out = a;
        for (size_t i = 0; i < out.c.size(); ++i) out.c[i] -= b.c[i];
        return out;
    }
    friend TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
        check(a, b);
        TruncSeries out(a.T, a.c[0].zero_like());
        for (unsigned i = 0; i <= a.T; ++i) {
            if (a.c[i].is_zero()) continue;
            for (unsigned j = 0; i + j <= a.T; ++j) out.c[i + j] += a.c[i] * b.c[j];
        }
        return out;
    }
    TruncSeries scale(const K& s) const {
        TruncSeries out = *this;
        for (auto& x : out.c) x = x * s;
        return out;
    }

    // multiply by an exact polynomial, truncated
    TruncSeries mul_poly(const Poly<K>& p) const {
        TruncSeries out(T, c[0].zero_like());
        for (size_t i = 0; i < p.c.size() && i <= T; ++i) {
            if (p.c[i].is_zero()) continue;
            for (unsigned j = 0; i + j <= T; ++j) out.c[i + j] += p.c[i] * c[j];
        }
        return out;
    }

    // 1 / this, requires invertible constant term
    TruncSeries inverse() const {
        if (c[0].is_zero()) throw std::domain_error("TruncSeries: inverse needs unit constant term");
        TruncSeries out(T, c[0].zero_like());
        K inv0 = reciprocal_of(c[0]);
        out.c[0] = inv0;
        for (unsigned k = 1; k <= T; ++k) {
            K acc = c[0].zero_like();
            for (unsigned j = 1; j <= k && j < c.size(); ++j) acc += c[j] * out.c[k - j];
            out.c[k] = -(acc * inv0);
        }
        return out;
    }

    bool is_one() const {
        if (c[0] != c[0].one_like()) return false;
        for (unsigned i = 1; i <= T; ++i)
            if (!c[i].is_zero()) return false;
        return true;
    }

private:
    static void check(const TruncSeries& a, const TruncSeries& b) {
        if (a.T != b.T) throw std::invalid_argument("TruncSeries: truncation mismatch");
    }
    static K reciprocal_of(const K& x);
};

template <>
inline Rational TruncSeries<Rational>::reciprocal_of(const Rational& x) {
    return Rational(1) / x;
}
template <>
inline CycNumber TruncSeries<CycNumber>::reciprocal_of(const CycNumber& x) {
    return x.inverse();
}

// det(1 - t M) as an exact polynomial, via the Faddeev-LeVerrier recursion
// (traces only, no eigenvalues, so everything stays in the ground field).
inline Poly<CycNumber> det_one_minus_t(const CycMatrix& m) {
    if (m.rows() != m.cols()) throw std::invalid_argument("det_one_minus_t: non-square");
    unsigned n = m.rows();
    const CycField* F = m.field();
    std::vector<CycNumber> coeff(n + 1, CycNumber::zero(F));
    coeff[0] = CycNumber::one(F);
    CycMatrix Mk = CycMatrix::identity(F, n);
    for (unsigned k = 1; k <= n; ++k) {
        Mk = m * Mk;
        CycNumber ck = -(Mk.trace() * Rational(1, static_cast<long>(k)));
        coeff[k] = ck;
        for (unsigned i = 0; i < n; ++i) Mk.at(i, i) += ck;
    }
    return Poly<CycNumber>(std::move(coeff));
}

struct CharDetSeries {
    Poly<CycNumber> det_poly;        // det(1 - t^d M), exact
    TruncSeries<CycNumber> recip;    // 1/det(1 - t M), truncated
};

// det(1 - t^d M) together with the truncated expansion of 1/det(1 - t M).
inline CharDetSeries char_det_series(const CycMatrix& m, unsigned scale_power, unsigned trunc) {
    if (m.rows() != m.cols()) throw std::invalid_argument("char_det_series: non-square input");
    if (scale_power == 0) throw std::invalid_argument("char_det_series: scale_power must be positive");
    Poly<CycNumber> p = det_one_minus_t(m);
    CharDetSeries out;
    out.det_poly = p.spread(scale_power);
    auto ps = TruncSeries<CycNumber>::from_poly(p, trunc, CycNumber::zero(m.field()));
    out.recip = ps.inverse();
    return out;
}

}  // namespace crg

#endif

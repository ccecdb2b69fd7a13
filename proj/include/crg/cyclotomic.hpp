#ifndef CRG_CYCLOTOMIC_HPP
#define CRG_CYCLOTOMIC_HPP

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "crg/rational.hpp"

namespace crg {

inline unsigned euler_phi(unsigned n) {
    unsigned result = n, m = n;
    for (unsigned p = 2; p * p <= m; ++p) {
        if (m % p == 0) {
            while (m % p == 0) m /= p;
            result -= result / p;
        }
    }
    if (m > 1) result -= result / m;
    return result;
}

namespace detail {

// Quotient of monic integer polynomials, exact.  Used only to build
// cyclotomic polynomials, so plain int64 coefficients suffice.
inline std::vector<long long> poly_div_exact(std::vector<long long> num,
                                             const std::vector<long long>& den) {
    if (den.empty() || den.back() != 1)
        throw std::logic_error("poly_div_exact: divisor must be monic");
    if (num.size() < den.size()) throw std::logic_error("poly_div_exact: degree mismatch");
    std::vector<long long> quot(num.size() - den.size() + 1, 0);
    for (size_t k = quot.size(); k-- > 0;) {
        long long c = num[k + den.size() - 1];
        quot[k] = c;
        if (c == 0) continue;
        for (size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
    }
    for (long long c : num)
        if (c != 0) throw std::logic_error("poly_div_exact: nonzero remainder");
    return quot;
}

inline const std::vector<long long>& cyclotomic_poly(unsigned n) {
    static std::map<unsigned, std::vector<long long>> cache;
    static std::mutex mtx;
    std::lock_guard<std::mutex> lock(mtx);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;

    std::function<std::vector<long long>(unsigned)> build = [&](unsigned k) -> std::vector<long long> {
        auto found = cache.find(k);
        if (found != cache.end()) return found->second;
        // x^k - 1 divided by the product of Phi_d over proper divisors d of k
        std::vector<long long> num(k + 1, 0);
        num[0] = -1;
        num[k] = 1;
        std::vector<long long> denom{1};
        for (unsigned d = 1; d < k; ++d) {
            if (k % d != 0) continue;
            auto pd = build(d);
            std::vector<long long> prod(denom.size() + pd.size() - 1, 0);
            for (size_t i = 0; i < denom.size(); ++i)
                for (size_t j = 0; j < pd.size(); ++j) prod[i + j] += denom[i] * pd[j];
            denom = std::move(prod);
        }
        auto phi = poly_div_exact(std::move(num), denom);
        cache.emplace(k, phi);
        return phi;
    };
    build(n);
    return cache.at(n);
}

}  // namespace detail

// Arithmetic context for Q(zeta_N): the minimal polynomial Phi_N together
// with precomputed reduction rows for the power basis 1, z, ..., z^(phi-1).
class CycField {
public:
    static const CycField* get(unsigned conductor) {
        if (conductor == 0) throw std::invalid_argument("CycField: conductor must be positive");
        static std::map<unsigned, std::unique_ptr<CycField>> registry;
        static std::mutex mtx;
        std::lock_guard<std::mutex> lock(mtx);
        auto it = registry.find(conductor);
        if (it == registry.end())
            it = registry.emplace(conductor, std::unique_ptr<CycField>(new CycField(conductor))).first;
        return it->second.get();
    }

    unsigned conductor() const { return conductor_; }
    unsigned degree() const { return degree_; }

    // x^k mod Phi for 0 <= k < conductor, as a power-basis coefficient row.
    const std::vector<Rational>& zeta_power(unsigned k) const { return zeta_pow_[k % conductor_]; }

    // x^(degree+k) mod Phi for 0 <= k <= degree-2.
    const std::vector<Rational>& high_power(unsigned k) const { return high_pow_[k]; }

    const std::vector<Rational>& min_poly() const { return phi_; }

private:
    explicit CycField(unsigned n) : conductor_(n), degree_(euler_phi(n)) {
        const auto& phi_int = detail::cyclotomic_poly(n);
        phi_.reserve(phi_int.size());
        for (long long c : phi_int) phi_.push_back(Rational(static_cast<long>(c)));

        // rows for x^(degree..2*degree-2) reduced mod Phi
        std::vector<Rational> cur(degree_, Rational(0));
        // x^degree = -(phi_0 + phi_1 x + ... + phi_{d-1} x^{d-1})
        for (unsigned i = 0; i < degree_; ++i) cur[i] = -phi_[i];
        high_pow_.push_back(cur);
        for (unsigned k = 1; k + 1 <= (degree_ == 0 ? 0 : degree_ - 1); ++k) {
            cur = shift_reduce(cur);
            high_pow_.push_back(cur);
        }

        zeta_pow_.resize(n);
        std::vector<Rational> p(degree_, Rational(0));
        if (degree_ > 0) {
            // z^0
            zeta_pow_[0] = std::vector<Rational>(degree_, Rational(0));
            zeta_pow_[0][0] = Rational(1);
            for (unsigned k = 1; k < n; ++k) {
                if (k < degree_) {
                    zeta_pow_[k] = std::vector<Rational>(degree_, Rational(0));
                    zeta_pow_[k][k] = Rational(1);
                } else {
                    zeta_pow_[k] = shift_reduce(zeta_pow_[k - 1]);
                }
            }
        }
    }

    // multiply by x and reduce mod Phi
    std::vector<Rational> shift_reduce(const std::vector<Rational>& v) const {
        std::vector<Rational> out(degree_, Rational(0));
        for (unsigned i = 0; i + 1 < degree_; ++i) out[i + 1] = v[i];
        const Rational& top = v[degree_ - 1];
        if (!top.is_zero())
            for (unsigned i = 0; i < degree_; ++i) out[i] += top * (-phi_[i]);
        return out;
    }

    unsigned conductor_;
    unsigned degree_;
    std::vector<Rational> phi_;
    std::vector<std::vector<Rational>> high_pow_;
    std::vector<std::vector<Rational>> zeta_pow_;
};

// Element of Q(zeta_N), stored as the canonical residue mod Phi_N in the
// power basis.  Immutable value type; all operations are pure.
class CycNumber {
public:
    CycNumber() : F_(nullptr) {}
    explicit CycNumber(const CycField* F) : F_(F), c_(F->degree(), Rational(0)) {}
    CycNumber(const CycField* F, std::vector<Rational> coeffs) : F_(F), c_(std::move(coeffs)) {
        if (c_.size() != F_->degree()) throw std::invalid_argument("CycNumber: bad coefficient count");
    }

    static CycNumber zero(const CycField* F) { return CycNumber(F); }
    static CycNumber one(const CycField* F) { return from_rational(F, Rational(1)); }
    static CycNumber from_rational(const CycField* F, const Rational& r) {
        CycNumber x(F);
        x.c_[0] = r;
        return x;
    }
    // zeta^k
    static CycNumber root_of_unity(const CycField* F, long k) {
        long n = static_cast<long>(F->conductor());
        long r = ((k % n) + n) % n;
        return CycNumber(F, F->zeta_power(static_cast<unsigned>(r)));
    }
    static CycNumber zeta(const CycField* F) { return root_of_unity(F, 1); }

    const CycField* field() const { return F_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& r : c_)
            if (!r.is_zero()) return false;
        return true;
    }
    bool is_rational() const {
        for (size_t i = 1; i < c_.size(); ++i)
            if (!c_[i].is_zero()) return false;
        return true;
    }
    Rational rational_part() const {
        if (!is_rational()) throw std::domain_error("CycNumber: not rational: " + to_string());
        return c_[0];
    }

    CycNumber zero_like() const { return CycNumber(F_); }
    CycNumber one_like() const { return one(F_); }

    friend CycNumber operator+(const CycNumber& a, const CycNumber& b) {
        check_fields(a, b);
        CycNumber out(a.F_);
        for (size_t i = 0; i < a.c_.size(); ++i) out.c_[i] = a.c_[i] + b.c_[i];
        return out;
    }
    friend CycNumber operator-(const CycNumber& a, const CycNumber& b) {
        check_fields(a, b);
        CycNumber out(a.F_);
        for (size_t i = 0; i < a.c_.size(); ++i) out.c_[i] = a.c_[i] - b.c_[i];
        return out;
    }
    CycNumber operator-() const {
        CycNumber out(F_);
        for (size_t i = 0; i < c_.size(); ++i) out.c_[i] = -c_[i];
        return out;
    }
    friend CycNumber operator*(const CycNumber& a, const CycNumber& b) {
        check_fields(a, b);
        unsigned d = a.F_->degree();
        std::vector<Rational> conv(2 * d - 1, Rational(0));
        for (unsigned i = 0; i < d; ++i) {
            if (a.c_[i].is_zero()) continue;
            for (unsigned j = 0; j < d; ++j) {
                if (b.c_[j].is_zero()) continue;
                conv[i + j] += a.c_[i] * b.c_[j];
            }
        }
        CycNumber out(a.F_);
        for (unsigned i = 0; i < d; ++i) out.c_[i] = conv[i];
        for (unsigned k = 0; d + k < conv.size(); ++k) {
            if (conv[d + k].is_zero()) continue;
            const auto& row = a.F_->high_power(k);
            for (unsigned i = 0; i < d; ++i) out.c_[i] += conv[d + k] * row[i];
        }
        return out;
    }
    friend CycNumber operator*(const CycNumber& a, const Rational& s) {
        CycNumber out(a.F_);
        for (size_t i = 0; i < a.c_.size(); ++i) out.c_[i] = a.c_[i] * s;
        return out;
    }
    friend CycNumber operator*(const Rational& s, const CycNumber& a) { return a * s; }

    CycNumber& operator+=(const CycNumber& o) { *this = *this + o; return *this; }
    CycNumber& operator-=(const CycNumber& o) { *this = *this - o; return *this; }
    CycNumber& operator*=(const CycNumber& o) { *this = *this * o; return *this; }

    // Field inverse via extended gcd with the minimal polynomial.
    CycNumber inverse() const {
        if (is_zero()) throw std::domain_error("CycNumber: division by zero");
        if (is_rational()) return from_rational(F_, crg::inverse(c_[0]));
        // extended Euclid over Q[x]: u*self + v*Phi = gcd (a nonzero constant)
        std::vector<Rational> r0 = F_->min_poly();
        std::vector<Rational> r1 = trim(c_);
        std::vector<Rational> s0{};           // coeff of self in r0 (zero)
        std::vector<Rational> s1{Rational(1)};  // coeff of self in r1
        while (true) {
            if (r1.empty()) throw std::logic_error("CycNumber: inverse gcd failure");
            if (r1.size() == 1) break;  // nonzero constant
            auto [q, r] = poly_divmod(r0, r1);
            std::vector<Rational> s2 = poly_sub(s0, poly_mul(q, s1));
            r0 = std::move(r1);
            r1 = std::move(r);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        Rational g = r1[0];
        std::vector<Rational> u(F_->degree(), Rational(0));
        for (size_t i = 0; i < s1.size() && i < u.size(); ++i) u[i] = s1[i] / g;
        // s1 may have degree >= field degree in edge cases; reduce via one multiplication
        CycNumber cand(F_, u);
        return cand;
    }

    friend CycNumber operator/(const CycNumber& a, const CycNumber& b) { return a * b.inverse(); }

    // The automorphism zeta -> zeta^(N-1) = complex conjugation on roots of unity.
    CycNumber conj() const {
        unsigned n = F_->conductor();
        CycNumber out(F_);
        for (unsigned k = 0; k < F_->degree(); ++k) {
            if (c_[k].is_zero()) continue;
            const auto& row = F_->zeta_power(static_cast<unsigned>((static_cast<unsigned long long>(k) * (n - 1)) % n));
            for (unsigned i = 0; i < F_->degree(); ++i) out.c_[i] += c_[k] * row[i];
        }
        return out;
    }

    CycNumber pow(long e) const {
        if (e < 0) return inverse().pow(-e);
        CycNumber acc = one(F_);
        CycNumber base = *this;
        unsigned long long k = static_cast<unsigned long long>(e);
        while (k) {
            if (k & 1ULL) acc = acc * base;
            base = base * base;
            k >>= 1;
        }
        return acc;
    }

    friend bool operator==(const CycNumber& a, const CycNumber& b) {
        check_fields(a, b);
        return a.c_ == b.c_;
    }
    friend bool operator!=(const CycNumber& a, const CycNumber& b) { return !(a == b); }

    std::string to_key() const {
        std::ostringstream os;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (i) os << ',';
            os << c_[i].to_string();
        }
        return os.str();
    }

    std::string to_string() const {
        std::ostringstream os;
        bool first = true;
        for (size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].is_zero()) continue;
            if (!first) os << " + ";
            os << c_[i].to_string();
            if (i >= 1) os << "*z" << (i > 1 ? "^" + std::to_string(i) : "");
            first = false;
        }
        if (first) os << "0";
        return os.str();
    }

private:
    static void check_fields(const CycNumber& a, const CycNumber& b) {
        if (a.F_ != b.F_)
            throw std::invalid_argument("CycNumber: conductor mismatch");
    }

    static std::vector<Rational> trim(std::vector<Rational> v) {
        while (!v.empty() && v.back().is_zero()) v.pop_back();
        return v;
    }
    static std::vector<Rational> poly_mul(const std::vector<Rational>& a, const std::vector<Rational>& b) {
        if (a.empty() || b.empty()) return {};
        std::vector<Rational> out(a.size() + b.size() - 1, Rational(0));
        for (size_t i = 0; i < a.size(); ++i)
            for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
        return trim(std::move(out));
    }
    static std::vector<Rational> poly_sub(const std::vector<Rational>& a, const std::vector<Rational>& b) {
        std::vector<Rational> out(std::max(a.size(), b.size()), Rational(0));
        for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
        for (size_t i = 0; i < b.size(); ++i) out[i] -= b[i];
        return trim(std::move(out));
    }
    static std::pair<std::vector<Rational>, std::vector<Rational>> poly_divmod(
        std::vector<Rational> num, const std::vector<Rational>& den) {
        if (den.empty()) throw std::logic_error("poly_divmod: zero divisor");
        std::vector<Rational> quot;
        if (num.size() >= den.size()) {
            quot.assign(num.size() - den.size() + 1, Rational(0));
            for (size_t k = quot.size(); k-- > 0;) {
                Rational c = num[k + den.size() - 1] / den.back();
                quot[k] = c;
                if (c.is_zero()) continue;
                for (size_t j = 0; j < den.size(); ++j) num[k + j] -= c * den[j];
            }
        }
        return {trim(std::move(quot)), trim(std::move(num))};
    }

    const CycField* F_;
    std::vector<Rational> c_;
};

enum class CycOp { add, sub, mul, div };

// Dispatcher form of the basic field arithmetic.
inline CycNumber cyc_arith(const CycNumber& a, const CycNumber& b, CycOp op) {
    switch (op) {
        case CycOp::add: return a + b;
        case CycOp::sub: return a - b;
        case CycOp::mul: return a * b;
        case CycOp::div: return a / b;
    }
    throw std::logic_error("cyc_arith: bad op");
}

inline CycNumber cyc_conjugate(const CycNumber& a) { return a.conj(); }

}  // namespace crg

#endif

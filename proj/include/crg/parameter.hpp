#ifndef CRG_PARAMETER_HPP
#define CRG_PARAMETER_HPP

#include <vector>

#include "crg/group.hpp"

namespace crg {

// W-invariant parameter tuple, stored per hyperplane orbit: c[o][j] for
// 0 <= j < n_H(orbit o).  Storing per orbit makes the invariance
// c_{H,j} = c_{w(H),j} structural.
struct Parameter {
    std::vector<std::vector<Rational>> c;

    static Parameter zero(const ReflectionGroup& G) {
        Parameter p;
        for (size_t o = 0; o < G.orbits().size(); ++o)
            p.c.emplace_back(G.orbit_order(static_cast<int>(o)), Rational(0));
        return p;
    }

    bool polynomial_action_ok() const {
        for (const auto& orb : c)
            if (!orb[0].is_zero()) return false;
        return true;
    }

    friend Parameter operator+(const Parameter& a, const Parameter& b) {
        Parameter out = a;
        for (size_t o = 0; o < out.c.size(); ++o)
            for (size_t j = 0; j < out.c[o].size(); ++j) out.c[o][j] += b.c[o][j];
        return out;
    }
    Parameter scaled(const Rational& s) const {
        Parameter out = *this;
        for (auto& orb : out.c)
            for (auto& x : orb) x *= s;
        return out;
    }
    friend bool operator==(const Parameter& a, const Parameter& b) { return a.c == b.c; }
};

// rho_{H,j} = j / n_H
inline Parameter rho_parameter(const ReflectionGroup& G) {
    Parameter p = Parameter::zero(G);
    for (size_t o = 0; o < p.c.size(); ++o) {
        long nH = static_cast<long>(p.c[o].size());
        for (long j = 0; j < nH; ++j) p.c[o][static_cast<size_t>(j)] = Rational(j, nH);
    }
    return p;
}

// One permutation of {0..n_H-1} per orbit.
using OrbitPermutation = std::vector<std::vector<int>>;

inline OrbitPermutation identity_permutation(const ReflectionGroup& G) {
    OrbitPermutation s;
    for (size_t o = 0; o < G.orbits().size(); ++o) {
        std::vector<int> p(G.orbit_order(static_cast<int>(o)));
        for (size_t j = 0; j < p.size(); ++j) p[j] = static_cast<int>(j);
        s.push_back(std::move(p));
    }
    return s;
}

// Dot action s . c = s(c + rho) - rho, where s permutes positions:
// (s x)_j = x_{s^{-1}(j)}.
inline Parameter dot_action(const ReflectionGroup& G, const OrbitPermutation& s, const Parameter& c) {
    Parameter rho = rho_parameter(G);
    Parameter shifted = c + rho;
    Parameter out = Parameter::zero(G);
    if (s.size() != c.c.size()) throw std::invalid_argument("dot_action: orbit count mismatch");
    for (size_t o = 0; o < c.c.size(); ++o) {
        size_t nH = c.c[o].size();
        if (s[o].size() != nH) throw std::invalid_argument("dot_action: permutation size mismatch");
        std::vector<int> sinv(nH, -1);
        for (size_t j = 0; j < nH; ++j) {
            int t = s[o][j];
            if (t < 0 || static_cast<size_t>(t) >= nH || sinv[static_cast<size_t>(t)] != -1)
                throw std::invalid_argument("dot_action: malformed permutation");
            sinv[static_cast<size_t>(t)] = static_cast<int>(j);
        }
        for (size_t j = 0; j < nH; ++j)
            out.c[o][j] = shifted.c[o][static_cast<size_t>(sinv[j])] - rho.c[o][j];
    }
    return out;
}

// The specific shift used for the lowest-weight construction:
//   sigma(c)_{H,0} = c_{H,0},  sigma(c)_{H,j} = c_{H,n_H-j} + 2(n_H-j)/n_H.
// For orbits with n_H = 2 this is translation by 1 on the j = 1 slot.
inline Parameter sigma_shift(const Parameter& c) {
    Parameter out = c;
    for (size_t o = 0; o < c.c.size(); ++o) {
        long nH = static_cast<long>(c.c[o].size());
        for (long j = 1; j < nH; ++j)
            out.c[o][static_cast<size_t>(j)] =
                c.c[o][static_cast<size_t>(nH - j)] + Rational(2 * (nH - j), nH);
    }
    return out;
}

// c_E = (1/dim E) sum over hyperplanes H and 0 <= j < n_H of
// n_H c_{H,j} E_{H,j}; orbit values are weighted by orbit size.
inline Rational c_function(const ReflectionGroup& G, const LocalData& E, const Parameter& c) {
    Rational acc(0);
    for (size_t o = 0; o < c.c.size(); ++o) {
        long orbit_size = static_cast<long>(G.orbits()[o].size());
        long nH = static_cast<long>(c.c[o].size());
        Rational inner(0);
        for (size_t j = 0; j < c.c[o].size(); ++j)
            inner += c.c[o][j] * Rational(E.orbit_data[o][j]);
        acc += Rational(orbit_size * nH) * inner;
    }
    return acc / Rational(static_cast<long>(E.dim));
}

}  // namespace crg

#endif

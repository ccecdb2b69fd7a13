#ifndef CRG_INVARIANTS_HPP
#define CRG_INVARIANTS_HPP

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "crg/group.hpp"
#include "crg/parallel.hpp"
#include "crg/series.hpp"

namespace crg {

// Default truncation: fake-degree polynomials live in degrees <= N and the
// invariant-degree sum is N + n, so this leaves ample certification room.
inline unsigned default_trunc(const ReflectionGroup& G) {
    return static_cast<unsigned>(2 * (G.reflection_indices().size() + G.rank() + 2));
}

// (1/|W|) sum over the group of char_E(w) / det(1 - t M_w), truncated.
// With E trivial this is the Molien series of the invariant ring.
inline TruncSeries<CycNumber> averaged_graded_trace(const ReflectionGroup& G,
                                                    const Representation* E_or_null,
                                                    unsigned T, int threads = 1) {
    const CycField* F = G.field();
    auto partials = parallel_chunks<TruncSeries<CycNumber>>(
        static_cast<size_t>(G.order()), threads, [&](size_t b, size_t e) {
            TruncSeries<CycNumber> acc(T, CycNumber::zero(F));
            for (size_t i = b; i < e; ++i) {
                auto cds = char_det_series(G.element(static_cast<int>(i)), 1, T);
                if (E_or_null) {
                    acc = acc + cds.recip.scale(E_or_null->char_of(static_cast<int>(i)));
                } else {
                    acc = acc + cds.recip;
                }
            }
            return acc;
        });
    TruncSeries<CycNumber> sum(T, CycNumber::zero(F));
    for (auto& p : partials) sum = sum + p;
    return sum.scale(CycNumber::from_rational(F, Rational(1, G.order())));
}

inline TruncSeries<Rational> to_rational_series(const TruncSeries<CycNumber>& s,
                                                const std::string& what) {
    TruncSeries<Rational> out(s.T, Rational(0));
    for (unsigned i = 0; i <= s.T; ++i) {
        if (!s.c[i].is_rational())
            throw std::logic_error(what + ": coefficient of t^" + std::to_string(i) + " is not rational");
        out.c[i] = s.c[i].rational_part();
    }
    return out;
}

// Greedy factorization of the Molien series as prod 1/(1 - t^{d_i}) with
// exactly n factors, certified by re-expansion and by prod d_i = |W|.
inline std::vector<long> molien_degrees(const ReflectionGroup& G, unsigned T = 0, int threads = 1) {
    if (T == 0) T = default_trunc(G);
    TruncSeries<Rational> molien =
        to_rational_series(averaged_graded_trace(G, nullptr, T, threads), "molien series");
    for (unsigned i = 0; i <= T; ++i)
        if (!molien.c[i].is_nonneg_integer())
            throw std::logic_error("molien series has a non-integer coefficient");

    TruncSeries<Rational> residual = molien;
    std::vector<long> degrees;
    for (unsigned step = 0; step < G.rank(); ++step) {
        unsigned k = 0;
        for (k = 1; k <= T; ++k)
            if (!residual.c[k].is_zero()) break;
        if (k > T)
            throw std::logic_error("molien_degrees: factorization ran out of obstructions (trunc too small?)");
        degrees.push_back(static_cast<long>(k));
        // multiply by (1 - t^k)
        Poly<Rational> factor(std::vector<Rational>{Rational(1)});
        factor.c.resize(k + 1, Rational(0));
        factor.c[k] = Rational(-1);
        factor.trim();
        residual = residual.mul_poly(factor);
    }
    if (!residual.is_one())
        throw std::logic_error("molien_degrees: residual is not 1 after removing " +
                               std::to_string(G.rank()) + " factors (group reducible or trunc too small)");
    long prod = 1;
    for (long d : degrees) prod *= d;
    if (prod != G.order())
        throw std::logic_error("molien_degrees: product of degrees does not equal |W|");
    std::sort(degrees.begin(), degrees.end());
    return degrees;
}

// Fake-degree polynomial of E: prod (1 - t^{d_i}) times the averaged graded
// trace against char_E.  Coefficients must be nonnegative integers summing
// to dim E; degrees of nonzero terms are the exponents of E.
inline Poly<Rational> fake_degree_poly(const ReflectionGroup& G, const Representation& E,
                                       const std::vector<long>& degrees, unsigned T = 0,
                                       int threads = 1) {
    if (T == 0) T = default_trunc(G);
    TruncSeries<Rational> avg =
        to_rational_series(averaged_graded_trace(G, &E, T, threads), "fake degree of " + E.name);
    TruncSeries<Rational> cur = avg;
    for (long d : degrees) {
        Poly<Rational> factor(std::vector<Rational>{Rational(1)});
        factor.c.resize(static_cast<size_t>(d) + 1, Rational(0));
        factor.c[static_cast<size_t>(d)] = Rational(-1);
        factor.trim();
        cur = cur.mul_poly(factor);
    }
    long N = static_cast<long>(G.reflection_indices().size());
    Rational total(0);
    Poly<Rational> out;
    out.c.assign(static_cast<size_t>(N) + 1, Rational(0));
    for (unsigned i = 0; i <= cur.T; ++i) {
        const Rational& c = cur.c[i];
        if (c.is_zero()) continue;
        if (!c.is_nonneg_integer())
            throw std::logic_error("fake_degree_poly(" + E.name + "): coefficient of t^" +
                                   std::to_string(i) + " is " + c.to_string());
        if (static_cast<long>(i) > N)
            throw std::logic_error("fake_degree_poly(" + E.name + "): nonzero coefficient beyond degree N");
        out.c[i] = c;
        total += c;
    }
    if (total != Rational(static_cast<long>(E.dim)))
        throw std::logic_error("fake_degree_poly(" + E.name + "): coefficients sum to " + total.to_string() +
                               ", expected dim E = " + std::to_string(E.dim));
    out.trim();
    return out;
}

inline std::vector<long> exponents_from_poly(const Poly<Rational>& p) {
    std::vector<long> exps;
    for (size_t i = 0; i < p.c.size(); ++i) {
        long mult = p.c[i].is_zero() ? 0 : p.c[i].to_long();
        for (long k = 0; k < mult; ++k) exps.push_back(static_cast<long>(i));
    }
    return exps;
}

inline std::vector<long> exponents_of(const ReflectionGroup& G, const Representation& E,
                                      unsigned T = 0, int threads = 1) {
    auto degrees = molien_degrees(G, T, threads);
    return exponents_from_poly(fake_degree_poly(G, E, degrees, T, threads));
}

// Degrees, both reflection-representation exponent multisets, and the
// split into the multiset {d_i - 1} and its companion (the coexponents).
struct ExponentData {
    std::vector<long> degrees;
    std::vector<long> exp_V;
    std::vector<long> exp_Vstar;
    std::vector<long> dmin1;         // {d_i - 1}
    std::vector<long> coexponents;   // exponents of whichever of V, V* is not {d_i - 1}
    std::string dmin1_rep;           // "V", "Vstar", or "both"
    bool identified = false;
};

inline ExponentData exponent_data(const ReflectionGroup& G, unsigned T = 0, int threads = 1) {
    ExponentData out;
    out.degrees = molien_degrees(G, T, threads);
    Representation V = rep_defining(G);
    Representation Vs = rep_dual(G);
    out.exp_V = exponents_from_poly(fake_degree_poly(G, V, out.degrees, T, threads));
    out.exp_Vstar = exponents_from_poly(fake_degree_poly(G, Vs, out.degrees, T, threads));
    for (long d : out.degrees) out.dmin1.push_back(d - 1);
    bool v_matches = (out.exp_V == out.dmin1);
    bool vs_matches = (out.exp_Vstar == out.dmin1);
    out.identified = v_matches || vs_matches;
    if (v_matches && vs_matches) {
        out.dmin1_rep = "both";
        out.coexponents = out.exp_V;
    } else if (v_matches) {
        out.dmin1_rep = "V";
        out.coexponents = out.exp_Vstar;
    } else if (vs_matches) {
        out.dmin1_rep = "Vstar";
        out.coexponents = out.exp_V;
    } else {
        out.dmin1_rep = "neither";
        out.coexponents = out.exp_Vstar;
    }
    return out;
}

inline std::vector<long> coexponents(const ReflectionGroup& G, unsigned T = 0, int threads = 1) {
    return exponent_data(G, T, threads).coexponents;
}

// Group classes for which the duality and Catalan identities are asserted
// rather than merely reported.
struct GroupClass {
    bool real = false;                  // character of V is self-conjugate
    bool family_m1 = false;             // G(l,1,n)
    bool higher_order_reflections = false;  // some n_H > 2
    bool well_generated_family = false;     // family with m == 1 or m == l

    bool duality_asserted() const { return real || family_m1 || higher_order_reflections; }
    bool catalan_asserted() const { return real || family_m1 || higher_order_reflections; }
};

inline GroupClass classify_group(const ReflectionGroup& G) {
    GroupClass c;
    c.real = true;
    for (long i = 0; i < G.order(); ++i) {
        CycNumber ch = G.element(static_cast<int>(i)).trace();
        if (ch != ch.conj()) {
            c.real = false;
            break;
        }
    }
    c.higher_order_reflections = G.max_stabilizer_order() > 2;
    if (G.spec().family) {
        c.family_m1 = (G.spec().m == 1);
        c.well_generated_family = (G.spec().m == 1 || G.spec().m == G.spec().l);
    }
    return c;
}

struct NumerologyCheck {
    std::string name;
    bool asserted = false;
    bool pass = false;
    std::string detail;
};

struct NumerologyReport {
    GroupStats stats;
    ExponentData exponents;
    GroupClass cls;
    std::vector<NumerologyCheck> checks;
    Rational catalan;          // prod (h + d_i)/d_i
    Rational catalan_coexp;    // prod (g + coexp_i + 1)/d_i
    bool all_asserted_pass = true;

    const NumerologyCheck* find(const std::string& name) const {
        for (const auto& c : checks)
            if (c.name == name) return &c;
        return nullptr;
    }
};

inline NumerologyReport numerology_report(const ReflectionGroup& G, unsigned T = 0, int threads = 1) {
    NumerologyReport rep;
    rep.stats = G.stats();
    rep.exponents = exponent_data(G, T, threads);
    rep.cls = classify_group(G);
    const auto& d = rep.exponents.degrees;
    const auto& coexp = rep.exponents.coexponents;
    long n = static_cast<long>(G.rank());

    auto add = [&](const std::string& name, bool asserted, bool pass, const std::string& detail) {
        rep.checks.push_back({name, asserted, pass, detail});
        if (asserted && !pass) rep.all_asserted_pass = false;
    };

    add("g_integer", true, rep.stats.g_integral, "g = " + rep.stats.g.to_string());
    add("h_integer", false, rep.stats.h_integral, "h = " + rep.stats.h.to_string());

    bool dual_ok = rep.stats.g_integral;
    std::string dual_detail;
    long g = rep.stats.g_integral ? rep.stats.g.to_long() : -1;
    if (rep.stats.g_integral) {
        for (long i = 0; i < n; ++i) {
            long lhs = d[static_cast<size_t>(i)] + d[static_cast<size_t>(n - 1 - i)];
            if (!dual_detail.empty()) dual_detail += ", ";
            dual_detail += std::to_string(d[static_cast<size_t>(i)]) + "+" +
                           std::to_string(d[static_cast<size_t>(n - 1 - i)]) + "=" + std::to_string(lhs);
            if (lhs != g + 2) dual_ok = false;
        }
        dual_detail += " vs g+2=" + std::to_string(g + 2);
    }
    add("degree_duality", rep.cls.duality_asserted(), dual_ok, dual_detail);

    // per-index identity g + coexp_i + 1 = h + d_i, ascending pairing
    bool idx_ok = rep.stats.g_integral && rep.stats.h_integral && rep.exponents.identified;
    std::string idx_detail;
    if (idx_ok) {
        long h = rep.stats.h.to_long();
        for (long i = 0; i < n; ++i) {
            long lhs = g + coexp[static_cast<size_t>(i)] + 1;
            long rhs = h + d[static_cast<size_t>(i)];
            if (!idx_detail.empty()) idx_detail += ", ";
            idx_detail += std::to_string(lhs) + "=" + std::to_string(rhs);
            if (lhs != rhs) idx_ok = false;
        }
    }
    add("index_identity", rep.cls.catalan_asserted(), idx_ok, idx_detail);

    // Catalan products
    rep.catalan = Rational(1);
    rep.catalan_coexp = Rational(1);
    for (long i = 0; i < n; ++i) {
        rep.catalan *= (rep.stats.h + Rational(d[static_cast<size_t>(i)])) / Rational(d[static_cast<size_t>(i)]);
        rep.catalan_coexp *= (rep.stats.g + Rational(coexp[static_cast<size_t>(i)] + 1)) /
                             Rational(d[static_cast<size_t>(i)]);
    }
    bool cat_ok = (rep.catalan == rep.catalan_coexp) && rep.catalan.is_integer();
    add("catalan", rep.cls.catalan_asserted(), cat_ok,
        "prod (h+d_i)/d_i = " + rep.catalan.to_string() +
            ", prod (g+coexp_i+1)/d_i = " + rep.catalan_coexp.to_string());

    // exponent duality on the multiset {d_i - 1}
    bool exp_ok = rep.stats.g_integral && rep.exponents.identified;
    std::string exp_detail = "multiset matched by: " + rep.exponents.dmin1_rep;
    if (exp_ok) {
        const auto& e = rep.exponents.dmin1;
        for (long i = 0; i < n; ++i)
            if (e[static_cast<size_t>(i)] + e[static_cast<size_t>(n - 1 - i)] != g) exp_ok = false;
    }
    add("exponent_duality", rep.cls.duality_asserted(), exp_ok, exp_detail);

    return rep;
}

// (1 - t^D)^n / (1 - t)^n: the graded dimension of a polynomial ring in n
// variables modulo an hsop in degree D.  Value at t = 1 is D^n.
struct KoszulGradedDim {
    Poly<Rational> poly;
    Rational value_at_one;
};

inline KoszulGradedDim koszul_graded_dim(unsigned n, unsigned D) {
    if (D == 0) throw std::invalid_argument("koszul_graded_dim: shift must be >= 1");
    Poly<Rational> block;
    block.c.assign(D, Rational(1));  // 1 + t + ... + t^{D-1}
    Poly<Rational> acc = Poly<Rational>::constant(Rational(1));
    for (unsigned i = 0; i < n; ++i) acc = acc * block;
    KoszulGradedDim out;
    out.poly = acc;
    out.value_at_one = acc.eval_one();
    return out;
}

// Graded multiplicity of the determinant character in the Koszul Euler
// characteristic for an n-dimensional module E placed in degree D:
//   (1/|W|) sum_w det(w)^{-1} det(1 - t^D B_w) / det(1 - t A_w),
// where A_w is the action on the degree-1 component of the polynomial ring.
struct KoszulDetResult {
    Poly<Rational> poly;
    bool integer_coeffs = true;
    bool tail_zero = true;      // vanishes beyond degree n(D-1)
    bool is_monomial = false;   // exactly one nonzero term with coefficient 1
    long monomial_degree = -1;
    Rational total_mass;        // sum of coefficients
};

inline KoszulDetResult koszul_det_multiplicity(const ReflectionGroup& G, const Representation& E,
                                               unsigned D, unsigned T = 0, int threads = 1) {
    if (E.dim != G.rank())
        throw std::invalid_argument("koszul_det_multiplicity: dim E must equal the rank");
    if (D == 0) throw std::invalid_argument("koszul_det_multiplicity: shift must be >= 1");
    unsigned n = G.rank();
    if (T == 0) T = n * D + 2;
    const CycField* F = G.field();

    auto partials = parallel_chunks<TruncSeries<CycNumber>>(
        static_cast<size_t>(G.order()), threads, [&](size_t b, size_t e) {
            TruncSeries<CycNumber> acc(T, CycNumber::zero(F));
            for (size_t i = b; i < e; ++i) {
                int wi = static_cast<int>(i);
                // degree-1 component carries the inverse-transpose matrices
                CycMatrix A = G.element(G.inverse_index(wi)).transpose();
                auto cds = char_det_series(A, 1, T);
                Poly<CycNumber> num = det_one_minus_t(E.mats[i]).spread(D);
                TruncSeries<CycNumber> term = cds.recip.mul_poly(num);
                acc = acc + term.scale(G.det_of(wi).inverse());
            }
            return acc;
        });
    TruncSeries<CycNumber> sum(T, CycNumber::zero(F));
    for (auto& p : partials) sum = sum + p;
    sum = sum.scale(CycNumber::from_rational(F, Rational(1, G.order())));
    TruncSeries<Rational> ser = to_rational_series(sum, "koszul_det_multiplicity");

    KoszulDetResult out;
    out.total_mass = Rational(0);
    out.poly.c.assign(T + 1, Rational(0));
    long top = static_cast<long>(n) * (static_cast<long>(D) - 1);
    int nonzero = 0;
    for (unsigned i = 0; i <= T; ++i) {
        const Rational& c = ser.c[i];
        if (!c.is_integer()) out.integer_coeffs = false;
        if (c.is_zero()) continue;
        if (static_cast<long>(i) > top) out.tail_zero = false;
        out.poly.c[i] = c;
        out.total_mass += c;
        ++nonzero;
        out.monomial_degree = static_cast<long>(i);
    }
    out.poly.trim();
    out.is_monomial = (nonzero == 1) && (out.total_mass == Rational(1));
    if (!out.is_monomial) out.monomial_degree = -1;
    return out;
}

}  // namespace crg

#endif

#ifndef CRG_CHEREDNIK_HPP
#define CRG_CHEREDNIK_HPP

#include <optional>
#include <string>
#include <vector>

#include "crg/invariants.hpp"
#include "crg/multipoly.hpp"
#include "crg/parallel.hpp"
#include "crg/parameter.hpp"

namespace crg {

// Dunkl operator family for a fixed parameter with c_{H,0} = 0 (the locus
// where the operators preserve polynomials).  The group acts on
// polynomials by (w.f)(v) = f(w^{-1} v); each hyperplane term is the
// stabilizer sum  sum_{w in W_H} (sum_j c_{H,j} det(w)^{-j}) w.f, divided
// exactly by the defining form alpha_H.
class DunklContext {
public:
    // alpha_scales: optional nonzero rescaling of each stored hyperplane
    // form; the operators must not depend on it.
    DunklContext(const ReflectionGroup& G, const Parameter& c,
                 const std::vector<CycNumber>& alpha_scales = {})
        : G_(G) {
        if (c.c.size() != G.orbits().size())
            throw std::invalid_argument("DunklContext: parameter orbit count mismatch");
        if (!c.polynomial_action_ok())
            throw std::invalid_argument("DunklContext: parameter must have c_{H,0} = 0 to act on polynomials");
        const CycField* F = G.field();
        for (size_t h = 0; h < G.hyperplanes().size(); ++h) {
            const HyperplaneRecord& rec = G.hyperplanes()[h];
            HyperplaneTerm term;
            term.alpha = rec.normal;
            if (!alpha_scales.empty()) {
                if (alpha_scales[h].is_zero())
                    throw std::invalid_argument("DunklContext: hyperplane form scale must be nonzero");
                for (auto& x : term.alpha) x *= alpha_scales[h];
            }
            for (int wi : rec.stabilizer) {
                CycNumber lambda = CycNumber::zero(F);
                const CycNumber det_inv = G.det_of(wi).inverse();
                CycNumber det_pow = CycNumber::one(F);
                for (size_t j = 0; j < rec.order; ++j) {
                    if (j > 0) det_pow *= det_inv;
                    if (j > 0) lambda += det_pow * c.c[static_cast<size_t>(rec.orbit)][j];
                }
                term.members.push_back({wi, lambda});
            }
            terms_.push_back(std::move(term));
        }
        // substitution rows for every element, precomputed so apply() is
        // safe for concurrent callers
        subs_.reserve(static_cast<size_t>(G.order()));
        for (long wi = 0; wi < G.order(); ++wi) {
            const CycMatrix& m = G.element(G.inverse_index(static_cast<int>(wi)));
            std::vector<std::vector<CycNumber>> rows(G.rank());
            for (unsigned r = 0; r < G.rank(); ++r) {
                rows[r].reserve(G.rank());
                for (unsigned c2 = 0; c2 < G.rank(); ++c2) rows[r].push_back(m.at(r, c2));
            }
            subs_.push_back(std::move(rows));
        }
    }

    const ReflectionGroup& group() const { return G_; }

    // Dunkl operator in coordinate direction i applied to f.
    MultiPoly apply(unsigned i, const MultiPoly& f) const {
        MultiPoly out = f.derivative(static_cast<int>(i));
        for (const auto& term : terms_) {
            if (term.alpha[i].is_zero()) continue;
            MultiPoly s(f.field(), f.nvars());
            for (const auto& [wi, lambda] : term.members) {
                if (lambda.is_zero()) continue;
                s = s + group_action(wi, f).scale(lambda);
            }
            if (s.is_zero()) continue;
            MultiPoly quot = s.divide_by_linear(term.alpha);
            out = out - quot.scale(term.alpha[i]);
        }
        return out;
    }

    // (w.f)(v) = f(w^{-1} v): substitute x_j -> row j of M_w^{-1}.
    MultiPoly group_action(int wi, const MultiPoly& f) const {
        return f.substitute_linear(subst_rows(wi));
    }

    const std::vector<std::vector<CycNumber>>& subst_rows(int wi) const {
        return subs_[static_cast<size_t>(wi)];
    }

    // Matrix of the direction-i operator from the degree-d component to the
    // degree-(d-1) component, in the monomial bases.
    CycMatrix operator_matrix(unsigned i, const MonomialBasis& from_basis,
                              const MonomialBasis& to_basis, int threads = 1) const {
        const CycField* F = G_.field();
        CycMatrix mat(F, to_basis.size(), from_basis.size());
        auto cols = parallel_chunks<std::vector<std::vector<CycNumber>>>(
            from_basis.size(), threads, [&](size_t b, size_t e) {
                std::vector<std::vector<CycNumber>> out;
                for (size_t cidx = b; cidx < e; ++cidx) {
                    MultiPoly mono = MultiPoly::monomial(F, from_basis.list[cidx], CycNumber::one(F));
                    MultiPoly img = apply(i, mono);
                    out.push_back(img.to_vector(to_basis.index, to_basis.size()));
                }
                return out;
            });
        unsigned col = 0;
        for (const auto& chunk : cols)
            for (const auto& v : chunk) {
                for (unsigned r = 0; r < to_basis.size(); ++r) mat.at(r, col) = v[r];
                ++col;
            }
        return mat;
    }

private:
    struct HyperplaneTerm {
        std::vector<CycNumber> alpha;
        std::vector<std::pair<int, CycNumber>> members;  // (element index, coefficient)
    };

    const ReflectionGroup& G_;
    std::vector<HyperplaneTerm> terms_;
    std::vector<std::vector<std::vector<CycNumber>>> subs_;
};

struct GramLayer {
    long degree = 0;
    long size = 0;
    long rank = 0;
    long det_mult = 0;
};

struct GramReport {
    std::vector<GramLayer> layers;
    long long total = 0;
    long det_total = 0;
    bool terminated = false;
    long termination_degree = -1;  // first degree with rank 0
};

namespace detail {

// Action matrix on a monomial component via linear substitution.
inline CycMatrix action_matrix(const CycField* F, const MonomialBasis& basis,
                               const std::vector<std::vector<CycNumber>>& rows) {
    CycMatrix m(F, basis.size(), basis.size());
    for (unsigned c = 0; c < basis.size(); ++c) {
        MultiPoly mono = MultiPoly::monomial(F, basis.list[c], CycNumber::one(F));
        MultiPoly img = mono.substitute_linear(rows);
        auto v = img.to_vector(basis.index, basis.size());
        for (unsigned r = 0; r < basis.size(); ++r) m.at(r, c) = v[r];
    }
    return m;
}

inline std::vector<std::vector<CycNumber>> matrix_rows(const CycMatrix& m) {
    std::vector<std::vector<CycNumber>> rows(m.rows());
    for (unsigned r = 0; r < m.rows(); ++r)
        for (unsigned c = 0; c < m.cols(); ++c) rows[r].push_back(m.at(r, c));
    return rows;
}

}  // namespace detail

// Contravariant-form ranks of the polynomial standard module, degree by
// degree.  The degree-d pairing matrix has entries <y^mu, x^nu> =
// constant term of (D^mu x^nu); its rank is the dimension of the degree-d
// layer of the irreducible quotient.  Layers are generated from degree 0,
// so the first zero layer terminates the module.
class GramComputation {
public:
    GramComputation(const ReflectionGroup& G, const Parameter& c, int threads = 1)
        : G_(G), ctx_(G, c), threads_(threads) {}

    GramReport run(long degree_cap) {
        GramReport rep;
        const CycField* F = G_.field();
        unsigned n = G_.rank();
        MonomialBasis prev = monomials_of_degree(static_cast<int>(n), 0);
        CycMatrix K_prev(F, 1, 1);
        K_prev.at(0, 0) = CycNumber::one(F);
        rep.layers.push_back({0, 1, 1, -1});
        rep.total = 1;
        bases_.push_back(prev);
        pairings_.push_back(K_prev);
        for (long d = 1; d <= degree_cap; ++d) {
            MonomialBasis cur = monomials_of_degree(static_cast<int>(n), static_cast<int>(d));
            std::vector<CycMatrix> dmats;
            for (unsigned i = 0; i < n; ++i) dmats.push_back(ctx_.operator_matrix(i, cur, prev, threads_));
            CycMatrix K(F, cur.size(), cur.size());
            auto rows = parallel_chunks<std::vector<std::vector<CycNumber>>>(
                cur.size(), threads_, [&](size_t b, size_t e) {
                    std::vector<std::vector<CycNumber>> out;
                    for (size_t mu = b; mu < e; ++mu) {
                        const Exps& me = cur.list[mu];
                        unsigned i = 0;
                        while (me[i] == 0) ++i;
                        Exps parent(me);
                        parent[i] -= 1;
                        int prow = prev.index.at(parent);
                        std::vector<CycNumber> row(cur.size(), CycNumber::zero(F));
                        for (unsigned col = 0; col < cur.size(); ++col) {
                            CycNumber acc = CycNumber::zero(F);
                            for (unsigned t = 0; t < prev.size(); ++t) {
                                const CycNumber& kv = K_prev.at(static_cast<unsigned>(prow), t);
                                if (kv.is_zero()) continue;
                                acc += kv * dmats[i].at(t, col);
                            }
                            row[col] = acc;
                        }
                        out.push_back(std::move(row));
                    }
                    return out;
                });
            unsigned r = 0;
            for (const auto& chunk : rows)
                for (const auto& rowv : chunk) {
                    for (unsigned cidx = 0; cidx < cur.size(); ++cidx) K.at(r, cidx) = rowv[cidx];
                    ++r;
                }
            long rank = static_cast<long>(K.rank());
            rep.layers.push_back({d, static_cast<long>(cur.size()), rank, -1});
            rep.total += rank;
            bases_.push_back(cur);
            pairings_.push_back(K);
            if (rank == 0) {
                rep.terminated = true;
                rep.termination_degree = d;
                break;
            }
            prev = std::move(cur);
            K_prev = std::move(K);
        }
        return rep;
    }

    // Determinant-isotype multiplicity of the quotient: per degree, the
    // rank of the pairing restricted to the det-isotypic column space and
    // its pairing partner on the row side (weights det^{-1} and det^{+1}).
    long det_multiplicity(GramReport& rep) {
        const CycField* F = G_.field();
        long total = 0;
        for (size_t d = 0; d < rep.layers.size(); ++d) {
            if (rep.layers[d].rank == 0) {
                rep.layers[d].det_mult = 0;
                continue;
            }
            const MonomialBasis& basis = bases_[d];
            CycMatrix Px(F, basis.size(), basis.size());
            CycMatrix Py(F, basis.size(), basis.size());
            for (long wi = 0; wi < G_.order(); ++wi) {
                CycMatrix ax = detail::action_matrix(F, basis, ctx_.subst_rows(static_cast<int>(wi)));
                CycMatrix ay = detail::action_matrix(
                    F, basis, detail::matrix_rows(G_.element(static_cast<int>(wi)).transpose()));
                Px = Px + ax * G_.det_of(static_cast<int>(wi)).inverse();
                Py = Py + ay * G_.det_of(static_cast<int>(wi));
            }
            CycNumber inv_order = CycNumber::from_rational(F, Rational(1, G_.order()));
            Px = Px * inv_order;
            Py = Py * inv_order;
            CycMatrix restricted = Py.transpose() * pairings_[d] * Px;
            long r = static_cast<long>(restricted.rank());
            rep.layers[d].det_mult = r;
            total += r;
        }
        rep.det_total = total;
        return total;
    }

    const MonomialBasis& basis_at(size_t d) const { return bases_[d]; }
    const CycMatrix& pairing_at(size_t d) const { return pairings_[d]; }
    const DunklContext& context() const { return ctx_; }

private:
    const ReflectionGroup& G_;
    DunklContext ctx_;
    int threads_;
    std::vector<MonomialBasis> bases_;
    std::vector<CycMatrix> pairings_;
};

inline long default_gram_cap(const ReflectionGroup& G) {
    GroupStats st = G.stats();
    long g = st.g_integral ? st.g.to_long() : (2 * st.N);  // fallback for odd inputs
    return static_cast<long>(G.rank()) * (g + 2);
}

struct SingularReport {
    long degree = 0;
    long dim = 0;
    long mult_V = 0;
    long mult_Vstar = 0;
    long mult_det = 0;
    long mult_triv = 0;
};

// Joint kernel of all Dunkl operators on the degree-d component, with
// isotype multiplicities of the reflection representations read off from
// exact traces of the group action on the kernel.
inline SingularReport singular_subspace(const ReflectionGroup& G, const Parameter& c, long degree,
                                        int threads = 1) {
    DunklContext ctx(G, c);
    const CycField* F = G.field();
    unsigned n = G.rank();
    MonomialBasis cur = monomials_of_degree(static_cast<int>(n), static_cast<int>(degree));
    MonomialBasis prev = monomials_of_degree(static_cast<int>(n), static_cast<int>(degree) - 1);
    CycMatrix stacked(F, n * prev.size(), cur.size());
    for (unsigned i = 0; i < n; ++i) {
        CycMatrix m = ctx.operator_matrix(i, cur, prev, threads);
        for (unsigned r = 0; r < prev.size(); ++r)
            for (unsigned cc = 0; cc < cur.size(); ++cc) stacked.at(i * prev.size() + r, cc) = m.at(r, cc);
    }
    auto kernel = stacked.kernel_basis();
    SingularReport rep;
    rep.degree = degree;
    rep.dim = static_cast<long>(kernel.size());
    if (kernel.empty()) return rep;

    unsigned k = static_cast<unsigned>(kernel.size());
    CycMatrix kmat(F, cur.size(), k);
    for (unsigned j = 0; j < k; ++j)
        for (unsigned r = 0; r < cur.size(); ++r) kmat.at(r, j) = kernel[j][r];

    // traces of the group action restricted to the kernel
    std::vector<CycNumber> traces;
    traces.reserve(static_cast<size_t>(G.order()));
    for (long wi = 0; wi < G.order(); ++wi) {
        CycMatrix act = detail::action_matrix(F, cur, ctx.subst_rows(static_cast<int>(wi)));
        CycMatrix img = act * kmat;
        // solve kmat * X = img: the kernel is W-stable
        CycMatrix aug(F, cur.size(), k + k);
        for (unsigned r = 0; r < cur.size(); ++r) {
            for (unsigned j = 0; j < k; ++j) aug.at(r, j) = kmat.at(r, j);
            for (unsigned j = 0; j < k; ++j) aug.at(r, k + j) = img.at(r, j);
        }
        std::vector<int> pivots;
        aug.echelonize(&pivots);
        CycNumber tr = CycNumber::zero(F);
        for (size_t prow = 0; prow < pivots.size(); ++prow) {
            if (pivots[prow] >= static_cast<int>(k))
                throw std::logic_error("singular_subspace: kernel is not W-stable");
            // row prow expresses basis vector pivots[prow]; trace adds X[p][p]
            tr += aug.at(static_cast<unsigned>(prow), k + static_cast<unsigned>(pivots[prow]));
        }
        traces.push_back(tr);
    }

    auto mult_of = [&](const Representation& E) -> long {
        CycNumber acc = CycNumber::zero(F);
        for (long wi = 0; wi < G.order(); ++wi)
            acc += E.char_of(static_cast<int>(wi)).conj() * traces[static_cast<size_t>(wi)];
        CycNumber val = acc * Rational(1, G.order());
        if (!val.is_rational() || !val.rational_part().is_nonneg_integer())
            throw std::logic_error("singular_subspace: non-integral isotype multiplicity");
        return val.rational_part().to_long();
    };
    rep.mult_V = mult_of(rep_defining(G));
    rep.mult_Vstar = mult_of(rep_dual(G));
    rep.mult_det = mult_of(rep_det(G));
    rep.mult_triv = mult_of(rep_trivial(G));
    return rep;
}

struct BaseParam {
    Rational c0;
    Parameter param;            // c_{H,j} = 2 j c0
    std::string hstar_rep;      // which of V, V* the normalization pinned
    Rational k_V, k_Vstar;      // c-function coefficients of c0 for V, V*
};

// The distinguished parameter c_{H,j} = 2 j c0 with c0 fixed by requiring
// the c-function of the degree-1 isotype to be 1.  Which of V, V* that is
// gets resolved by an actual singular-subspace computation in degree 1.
inline BaseParam base_parameter(const ReflectionGroup& G, int threads = 1) {
    if (G.reflection_indices().empty())
        throw std::invalid_argument("base_parameter: group has no reflections");
    Parameter unit = Parameter::zero(G);
    for (size_t o = 0; o < unit.c.size(); ++o)
        for (size_t j = 1; j < unit.c[o].size(); ++j) unit.c[o][j] = Rational(2 * static_cast<long>(j));
    LocalData ldV = local_data(G, rep_defining(G));
    LocalData ldVs = local_data(G, rep_dual(G));
    BaseParam bp;
    bp.k_V = c_function(G, ldV, unit);
    bp.k_Vstar = c_function(G, ldVs, unit);
    for (const auto& [name, k] : {std::pair<std::string, Rational>{"Vstar", bp.k_Vstar},
                                  std::pair<std::string, Rational>{"V", bp.k_V}}) {
        if (k.is_zero()) continue;
        Rational c0 = Rational(1) / k;
        Parameter cand = unit.scaled(c0);
        SingularReport sing = singular_subspace(G, cand, 1, threads);
        if (sing.dim == static_cast<long>(G.rank())) {
            bp.c0 = c0;
            bp.param = cand;
            bp.hstar_rep = name;
            return bp;
        }
    }
    throw std::logic_error("base_parameter: no candidate normalization annihilates the degree-1 component");
}

// Deterministic direction inside the hyperplane c_{h*} = 1, used for the
// genericity retries: zero when the parameter space is 1-dimensional.
inline Parameter epsilon_direction(const ReflectionGroup& G, const BaseParam& bp) {
    LocalData ld = local_data(G, bp.hstar_rep == "V" ? rep_defining(G) : rep_dual(G));
    struct Slot {
        size_t o, j;
        Rational k;
    };
    std::vector<Slot> slots;
    Parameter delta = Parameter::zero(G);
    for (size_t o = 0; o < delta.c.size(); ++o)
        for (size_t j = 1; j < delta.c[o].size(); ++j) {
            Parameter probe = Parameter::zero(G);
            probe.c[o][j] = Rational(1);
            slots.push_back({o, j, c_function(G, ld, probe)});
        }
    if (slots.size() < 2) return delta;
    size_t lead = 0;
    while (lead < slots.size() && slots[lead].k.is_zero()) ++lead;
    if (lead == slots.size()) return delta;
    static const long primes[] = {3, 5, 7, 11, 13, 17, 19, 23};
    Rational lead_coord(0);
    size_t pi = 0;
    for (size_t s = 0; s < slots.size(); ++s) {
        if (s == lead) continue;
        Rational w(primes[pi % (sizeof(primes) / sizeof(primes[0]))]);
        ++pi;
        delta.c[slots[s].o][slots[s].j] = w;
        lead_coord -= slots[s].k * w;
    }
    delta.c[slots[lead].o][slots[lead].j] = lead_coord / slots[lead].k;
    return delta;
}

struct LowestReport {
    BaseParam base;
    Rational epsilon;
    Parameter c_used;        // base + eps * delta
    Parameter sigma_c;
    GramReport gram;
    SingularReport singular; // at degree g + 1
    long long expected_dim = 0;
    bool dim_ok = false;
    bool det_ok = false;
    bool singular_ok = false;
};

inline LowestReport lowest_module(const ReflectionGroup& G, const Rational& eps, int threads = 1,
                                  long cap_override = 0) {
    LowestReport rep;
    rep.base = base_parameter(G, threads);
    rep.epsilon = eps;
    Parameter c = rep.base.param;
    if (!eps.is_zero()) {
        Parameter delta = epsilon_direction(G, rep.base);
        c = c + delta.scaled(eps);
    }
    rep.c_used = c;
    rep.sigma_c = sigma_shift(c);
    long cap = cap_override > 0 ? cap_override : default_gram_cap(G);
    GramComputation gram(G, rep.sigma_c, threads);
    rep.gram = gram.run(cap);
    if (rep.gram.terminated) gram.det_multiplicity(rep.gram);

    GroupStats st = G.stats();
    long g = st.g.to_long();
    long long expected = 1;
    for (unsigned i = 0; i < G.rank(); ++i) expected *= (g + 1);
    rep.expected_dim = expected;
    rep.dim_ok = rep.gram.terminated && rep.gram.total == expected;
    rep.det_ok = rep.gram.terminated && rep.gram.det_total == 1;
    rep.singular = singular_subspace(G, rep.sigma_c, g + 1, threads);
    rep.singular_ok = rep.singular.mult_V + rep.singular.mult_Vstar >= 1;
    return rep;
}

struct JackIndexCensus {
    long long box_count = 0;       // lattice points with all coordinates <= bound
    long q_count = 0;              // admissible strictly increasing sequences
    std::vector<long> witness;     // the unique admissible sequence, when q_count >= 1
    long bound = 0;
};

// Index combinatorics for the monomial family: mu in Z_{>=0}^n with
// mu_i <= l(n-1) + 2l/m - 2, and strictly increasing Q with one residue
// class mod l and entries congruent to l/m - 1 mod l/m.
inline JackIndexCensus jack_index_census(long l, long m, long n) {
    if (l <= 0 || m <= 0 || n <= 0 || l % m != 0)
        throw std::invalid_argument("jack_index_census: need positive l, m, n with m | l");
    JackIndexCensus out;
    long lm = l / m;
    out.bound = l * (n - 1) + 2 * lm - 2;
    out.box_count = 1;
    for (long i = 0; i < n; ++i) out.box_count *= (out.bound + 1);
    // verify the product by explicit enumeration when feasible
    if (out.box_count <= 2000000) {
        long long count = 0;
        std::vector<long> mu(static_cast<size_t>(n), 0);
        while (true) {
            ++count;
            long i = 0;
            while (i < n && mu[static_cast<size_t>(i)] == out.bound) {
                mu[static_cast<size_t>(i)] = 0;
                ++i;
            }
            if (i == n) break;
            ++mu[static_cast<size_t>(i)];
        }
        if (count != out.box_count)
            throw std::logic_error("jack_index_census: enumeration disagrees with closed form");
    }

    std::vector<long> cur;
    std::function<void(long)> rec = [&](long start) {
        if (static_cast<long>(cur.size()) == n) {
            long r = cur[0] % l;
            for (long q : cur) {
                if (q % l != r) return;
                if (((q % lm) + lm) % lm != (lm - 1) % lm) return;
            }
            ++out.q_count;
            if (out.q_count == 1) out.witness = cur;
            return;
        }
        for (long q = start; q <= out.bound; ++q) {
            cur.push_back(q);
            rec(q + 1);
            cur.pop_back();
        }
    };
    rec(0);
    return out;
}

}  // namespace crg

#endif

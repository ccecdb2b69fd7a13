#include <catch2/catch.hpp>

#include <random>

#include "crg/cherednik.hpp"

using namespace crg;

namespace {

MultiPoly random_poly(const CycField* F, int nvars, int maxdeg, std::mt19937& rng) {
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> deg(0, maxdeg);
    MultiPoly p(F, nvars);
    for (int t = 0; t < 6; ++t) {
        Exps e(static_cast<size_t>(nvars), 0);
        int d = deg(rng);
        for (int rem = d, i = 0; i < nvars; ++i) {
            std::uniform_int_distribution<int> pick(0, rem);
            int v = (i + 1 == nvars) ? rem : pick(rng);
            e[static_cast<size_t>(i)] = v;
            rem -= v;
        }
        std::vector<Rational> cv(F->degree());
        for (auto& x : cv) x = Rational(coeff(rng));
        p.add_term(e, CycNumber(F, cv));
    }
    return p;
}

Parameter random_parameter(const ReflectionGroup& G, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-4, 4);
    std::uniform_int_distribution<int> den(1, 5);
    Parameter p = Parameter::zero(G);
    for (auto& orb : p.c)
        for (size_t j = 1; j < orb.size(); ++j) orb[j] = Rational(num(rng), den(rng));
    return p;
}

// pairing entry <y^mu, x^nu> computed the slow way: apply the Dunkl word
// one factor at a time and read off the constant term
CycNumber pairing_direct(const DunklContext& ctx, const Exps& mu, const Exps& nu) {
    const CycField* F = ctx.group().field();
    MultiPoly f = MultiPoly::monomial(F, nu, CycNumber::one(F));
    for (size_t i = 0; i < mu.size(); ++i)
        for (int k = 0; k < mu[i]; ++k) f = ctx.apply(static_cast<unsigned>(i), f);
    return f.constant_term();
}

}  // namespace

TEST_CASE("dot action") {
    ReflectionGroup G(GroupSpec::family_spec(2, 1, 2));  // two orbits, n_H = 2 each

    SECTION("identity fixes every parameter") {
        std::mt19937 rng(3);
        Parameter c = random_parameter(G, rng);
        CHECK(dot_action(G, identity_permutation(G), c) == c);
    }
    SECTION("swap on an order-2 orbit sends 0 to (1/2, -1/2)") {
        OrbitPermutation s = identity_permutation(G);
        s[0] = {1, 0};
        Parameter out = dot_action(G, s, Parameter::zero(G));
        CHECK(out.c[0][0] == Rational(1, 2));
        CHECK(out.c[0][1] == Rational(-1, 2));
        CHECK(out.c[1][0] == Rational(0));
    }
    SECTION("left action: s.(t.c) = (st).c and inverses cancel") {
        ReflectionGroup G3(GroupSpec::family_spec(3, 1, 2));  // has an n_H = 3 orbit
        std::mt19937 rng(11);
        for (int t = 0; t < 10; ++t) {
            Parameter c = random_parameter(G3, rng);
            OrbitPermutation s = identity_permutation(G3), u = identity_permutation(G3);
            for (auto& perm : s) std::shuffle(perm.begin(), perm.end(), rng);
            for (auto& perm : u) std::shuffle(perm.begin(), perm.end(), rng);
            OrbitPermutation su = s;
            for (size_t o = 0; o < s.size(); ++o)
                for (size_t j = 0; j < s[o].size(); ++j)
                    su[o][j] = s[o][static_cast<size_t>(u[o][j])];
            CHECK(dot_action(G3, s, dot_action(G3, u, c)) == dot_action(G3, su, c));
            OrbitPermutation sinv = s;
            for (size_t o = 0; o < s.size(); ++o)
                for (size_t j = 0; j < s[o].size(); ++j) sinv[o][static_cast<size_t>(s[o][j])] = static_cast<int>(j);
            CHECK(dot_action(G3, s, dot_action(G3, sinv, c)) == c);
        }
    }
    SECTION("malformed permutation is rejected") {
        OrbitPermutation s = identity_permutation(G);
        s[0] = {0, 0};
        CHECK_THROWS(dot_action(G, s, Parameter::zero(G)));
    }
}

TEST_CASE("sigma shift") {
    SECTION("order-2 orbits: translation by 1 away from j = 0") {
        ReflectionGroup G(GroupSpec::family_spec(2, 1, 2));
        Parameter z = Parameter::zero(G);
        Parameter s = sigma_shift(z);
        for (const auto& orb : s.c) {
            CHECK(orb[0] == Rational(0));
            CHECK(orb[1] == Rational(1));
        }
        std::mt19937 rng(5);
        Parameter c = random_parameter(G, rng);
        Parameter sc = sigma_shift(c);
        for (size_t o = 0; o < c.c.size(); ++o) CHECK(sc.c[o][1] == c.c[o][1] + Rational(1));
        // applying the formula twice translates by 2 on order-2 orbits
        Parameter ssc = sigma_shift(sc);
        for (size_t o = 0; o < c.c.size(); ++o) CHECK(ssc.c[o][1] == c.c[o][1] + Rational(2));
    }
    SECTION("order-3 orbit values") {
        ReflectionGroup G(GroupSpec::family_spec(3, 1, 1));  // single orbit with n_H = 3
        Parameter s = sigma_shift(Parameter::zero(G));
        CHECK(s.c[0][0] == Rational(0));
        CHECK(s.c[0][1] == Rational(4, 3));
        CHECK(s.c[0][2] == Rational(2, 3));
    }
}

TEST_CASE("c function") {
    SECTION("trivial representation at polynomial-action parameters") {
        ReflectionGroup G(GroupSpec::family_spec(3, 1, 2));
        std::mt19937 rng(9);
        Parameter c = random_parameter(G, rng);
        LocalData triv = local_data(G, rep_trivial(G));
        CHECK(c_function(G, triv, c) == Rational(0));
    }
    SECTION("G(2,1,2) reflection representation: 8 c0") {
        ReflectionGroup G(GroupSpec::family_spec(2, 1, 2));
        Parameter c = Parameter::zero(G);
        for (auto& orb : c.c) orb[1] = Rational(2);  // c_{H,1} = 2 c0 with c0 = 1
        LocalData ld = local_data(G, rep_dual(G));   // local data (1,1) at each hyperplane
        CHECK(c_function(G, ld, c) == Rational(8));
    }
    SECTION("linearity") {
        ReflectionGroup G(GroupSpec::family_spec(3, 1, 2));
        std::mt19937 rng(13);
        LocalData ld = local_data(G, rep_defining(G));
        for (int t = 0; t < 8; ++t) {
            Parameter a = random_parameter(G, rng), b = random_parameter(G, rng);
            CHECK(c_function(G, ld, a + b) == c_function(G, ld, a) + c_function(G, ld, b));
        }
    }
}

TEST_CASE("base parameter pinned values") {
    struct Case {
        long l, m, n;
        Rational c0;
    };
    for (const auto& e : std::vector<Case>{{2, 1, 2, Rational(1, 8)},
                                           {3, 3, 2, Rational(1, 6)},
                                           {2, 1, 1, Rational(1, 4)},
                                           {3, 1, 2, Rational(1, 18)}}) {
        ReflectionGroup G(GroupSpec::family_spec(e.l, e.m, e.n));
        BaseParam bp = base_parameter(G);
        INFO(G.spec().description);
        CHECK(bp.c0 == e.c0);
        // the normalized candidate annihilates the whole degree-1 component
        SingularReport s = singular_subspace(G, bp.param, 1);
        CHECK(s.dim == static_cast<long>(G.rank()));
    }
}

TEST_CASE("rank-1 Dunkl operator") {
    ReflectionGroup G(GroupSpec::family_spec(2, 1, 1));
    const CycField* F = G.field();
    Parameter c = Parameter::zero(G);
    c.c[0][1] = Rational(3, 7);
    DunklContext ctx(G, c);
    MultiPoly x = MultiPoly::monomial(F, {1}, CycNumber::one(F));
    MultiPoly x2 = MultiPoly::monomial(F, {2}, CycNumber::one(F));

    // even powers see only the plain derivative
    CHECK(ctx.apply(0, x2) == MultiPoly::monomial(F, {1}, CycNumber::from_rational(F, Rational(2))));
    // y(x) = 1 - 2c
    CHECK(ctx.apply(0, x) ==
          MultiPoly::constant(F, 1, CycNumber::from_rational(F, Rational(1) - Rational(2) * Rational(3, 7))));
    // constants die
    CHECK(ctx.apply(0, MultiPoly::constant(F, 1, CycNumber::one(F))).is_zero());
}

TEST_CASE("Dunkl operators require the polynomial-action flag") {
    ReflectionGroup G(GroupSpec::family_spec(2, 1, 2));
    Parameter c = Parameter::zero(G);
    c.c[0][0] = Rational(1, 2);
    CHECK_THROWS(DunklContext(G, c));
}

TEST_CASE("inexact linear division is an error") {
    auto F = CycField::get(3);
    MultiPoly p = MultiPoly::monomial(F, {1, 1}, CycNumber::one(F)) +
                  MultiPoly::constant(F, 2, CycNumber::one(F));
    std::vector<CycNumber> alpha{CycNumber::one(F), CycNumber::zero(F)};
    CHECK_THROWS_WITH(p.divide_by_linear(alpha), Catch::Contains("inexact"));
    MultiPoly q = MultiPoly::monomial(F, {1, 1}, CycNumber::one(F)) +
                  MultiPoly::monomial(F, {1, 0}, CycNumber::zeta(F));
    MultiPoly quot = q.divide_by_linear(alpha);
    CHECK(quot * MultiPoly::monomial(F, {1, 0}, CycNumber::one(F)) == q);
}

TEST_CASE("gram cap without termination is reported") {
    ReflectionGroup G(GroupSpec::family_spec(2, 1, 2));
    BaseParam bp = base_parameter(G);
    GramComputation gram(G, sigma_shift(bp.param));
    GramReport rep = gram.run(3);  // far below the true top degree 8
    CHECK_FALSE(rep.terminated);
    CHECK(rep.termination_degree == -1);
}

TEST_CASE("Dunkl operators commute and lower degree") {
    std::mt19937 rng(101);
    for (auto [l, m, n] : std::vector<std::tuple<long, long, long>>{{2, 1, 2}, {3, 3, 2}, {3, 1, 2}}) {
        ReflectionGroup G(GroupSpec::family_spec(l, m, n));
        const CycField* F = G.field();
        for (int pt = 0; pt < 3; ++pt) {
            Parameter c = random_parameter(G, rng);
            DunklContext ctx(G, c);
            for (int t = 0; t < 20; ++t) {
                MultiPoly f = random_poly(F, static_cast<int>(G.rank()), 5, rng);
                MultiPoly d01 = ctx.apply(0, ctx.apply(1, f));
                MultiPoly d10 = ctx.apply(1, ctx.apply(0, f));
                CHECK(d01 == d10);
                if (!f.is_zero() && f.degree() > 0) {
                    MultiPoly df = ctx.apply(0, f);
                    if (!df.is_zero()) CHECK(df.degree() <= f.degree() - 1);
                }
                // on homogeneous input the image is homogeneous of degree d-1
                MultiPoly h = MultiPoly::monomial(F, {2, 3}, CycNumber::one(F));
                MultiPoly dh = ctx.apply(1, h);
                for (const auto& [e, cf] : dh.terms()) CHECK(e[0] + e[1] == 4);
            }
        }
    }
}

TEST_CASE("Dunkl output does not depend on hyperplane form scaling") {
    ReflectionGroup G(GroupSpec::family_spec(3, 3, 2));
    const CycField* F = G.field();
    std::mt19937 rng(77);
    Parameter c = random_parameter(G, rng);
    DunklContext plain(G, c);
    std::vector<CycNumber> scales;
    auto z = CycNumber::zeta(F);
    for (size_t h = 0; h < G.hyperplanes().size(); ++h)
        scales.push_back((z + CycNumber::one(F)) * Rational(static_cast<long>(h) + 2, 3));
    DunklContext scaled(G, c, scales);
    for (int t = 0; t < 10; ++t) {
        MultiPoly f = random_poly(F, 2, 5, rng);
        CHECK(plain.apply(0, f) == scaled.apply(0, f));
        CHECK(plain.apply(1, f) == scaled.apply(1, f));
    }
}

TEST_CASE("gram dimensions pinned values") {
    struct Case {
        long l, m, n;
        long long dim;
        std::vector<long> ranks;  // empty = skip rank check
    };
    for (const auto& e : std::vector<Case>{{2, 1, 1, 3, {1, 1, 1, 0}},
                                           {2, 1, 2, 25, {}},
                                           {3, 3, 2, 16, {}}}) {
        ReflectionGroup G(GroupSpec::family_spec(e.l, e.m, e.n));
        INFO(G.spec().description);
        LowestReport rep = lowest_module(G, Rational(0));
        CHECK(rep.gram.terminated);
        CHECK(rep.gram.total == e.dim);
        CHECK(rep.expected_dim == e.dim);
        CHECK(rep.gram.det_total == 1);
        if (!e.ranks.empty()) {
            std::vector<long> got;
            for (const auto& L : rep.gram.layers) got.push_back(L.rank);
            CHECK(got == e.ranks);
        }
        // layer ranks never exceed layer sizes
        for (const auto& L : rep.gram.layers) CHECK(L.rank <= L.size);
    }
}

TEST_CASE("pairing recursion agrees with direct Dunkl words") {
    ReflectionGroup G(GroupSpec::family_spec(3, 3, 2));
    BaseParam bp = base_parameter(G);
    Parameter sc = sigma_shift(bp.param);
    GramComputation gram(G, sc);
    GramReport rep = gram.run(default_gram_cap(G));
    REQUIRE(rep.terminated);
    DunklContext ctx(G, sc);
    for (size_t d = 1; d <= 3; ++d) {
        const MonomialBasis& basis = gram.basis_at(d);
        const CycMatrix& K = gram.pairing_at(d);
        for (unsigned mu = 0; mu < basis.size(); ++mu)
            for (unsigned nu = 0; nu < basis.size(); ++nu)
                CHECK(K.at(mu, nu) == pairing_direct(ctx, basis.list[mu], basis.list[nu]));
    }
}

TEST_CASE("zero layer propagates beyond termination") {
    ReflectionGroup G(GroupSpec::family_spec(2, 1, 2));
    LowestReport rep = lowest_module(G, Rational(0));
    REQUIRE(rep.gram.terminated);
    long d = rep.gram.termination_degree + 1;
    DunklContext ctx(G, rep.sigma_c);
    MonomialBasis basis = monomials_of_degree(2, static_cast<int>(d));
    for (unsigned mu = 0; mu < basis.size(); ++mu)
        for (unsigned nu = 0; nu < basis.size(); ++nu)
            CHECK(pairing_direct(ctx, basis.list[mu], basis.list[nu]).is_zero());
}

TEST_CASE("isotype-projected rank is conjugation invariant") {
    ReflectionGroup G(GroupSpec::family_spec(3, 3, 2));
    const CycField* F = G.field();
    BaseParam bp = base_parameter(G);
    Parameter sc = sigma_shift(bp.param);
    GramComputation gram(G, sc);
    GramReport rep = gram.run(default_gram_cap(G));
    REQUIRE(rep.terminated);
    DunklContext ctx(G, sc);

    size_t d = 3;
    const MonomialBasis& basis = gram.basis_at(d);
    CycMatrix Px(F, basis.size(), basis.size());
    CycMatrix Py(F, basis.size(), basis.size());
    std::vector<CycMatrix> ax_all, ay_all;
    for (long wi = 0; wi < G.order(); ++wi) {
        CycMatrix ax = detail::action_matrix(F, basis, ctx.subst_rows(static_cast<int>(wi)));
        CycMatrix ay = detail::action_matrix(
            F, basis, detail::matrix_rows(G.element(static_cast<int>(wi)).transpose()));
        Px = Px + ax * G.det_of(static_cast<int>(wi)).inverse();
        Py = Py + ay * G.det_of(static_cast<int>(wi));
        ax_all.push_back(ax);
        ay_all.push_back(ay);
    }
    CycNumber invw = CycNumber::from_rational(F, Rational(1, G.order()));
    Px = Px * invw;
    Py = Py * invw;
    unsigned base_rank = (Py.transpose() * gram.pairing_at(d) * Px).rank();
    std::mt19937 rng(31);
    for (int t = 0; t < 3; ++t) {
        int u = static_cast<int>(rng() % G.order());
        int uinv = G.inverse_index(u);
        CycMatrix Pxc = ax_all[static_cast<size_t>(u)] * Px * ax_all[static_cast<size_t>(uinv)];
        CycMatrix Pyc = ay_all[static_cast<size_t>(u)] * Py * ay_all[static_cast<size_t>(uinv)];
        CHECK((Pyc.transpose() * gram.pairing_at(d) * Pxc).rank() == base_rank);
    }
}

TEST_CASE("singular subspaces") {
    SECTION("generic parameters admit no degree-1 singular vectors") {
        ReflectionGroup G(GroupSpec::family_spec(2, 1, 2));
        std::mt19937 rng(41);
        Parameter c = random_parameter(G, rng);
        c.c[0][1] += Rational(1, 997);  // avoid accidental special values
        SingularReport s = singular_subspace(G, c, 1);
        CHECK(s.dim == 0);
    }
    SECTION("zero parameter reduces to partial derivatives") {
        ReflectionGroup G(GroupSpec::family_spec(3, 3, 2));
        for (long d : {1L, 2L, 3L}) {
            SingularReport s = singular_subspace(G, Parameter::zero(G), d);
            CHECK(s.dim == 0);
        }
    }
    SECTION("G(2,1,2) at the shifted parameter, degree g+1") {
        ReflectionGroup G(GroupSpec::family_spec(2, 1, 2));
        BaseParam bp = base_parameter(G);
        SingularReport s = singular_subspace(G, sigma_shift(bp.param), 5);
        CHECK(s.dim >= 2);
        CHECK(s.mult_V + s.mult_Vstar >= 1);
    }
}

TEST_CASE("gram stability under epsilon perturbation") {
    ReflectionGroup G(GroupSpec::family_spec(2, 1, 2));
    for (const auto& eps : {Rational(0), Rational(1, 97), Rational(1, 101)}) {
        LowestReport rep = lowest_module(G, eps);
        CHECK(rep.gram.total == 25);
        CHECK(rep.gram.det_total == 1);
    }
    // the perturbation direction actually moves the parameter
    BaseParam bp = base_parameter(G);
    Parameter delta = epsilon_direction(G, bp);
    bool moved = false;
    for (const auto& orb : delta.c)
        for (const auto& x : orb)
            if (!x.is_zero()) moved = true;
    CHECK(moved);
    // and stays on the normalization hyperplane
    LocalData ld = local_data(G, bp.hstar_rep == "V" ? rep_defining(G) : rep_dual(G));
    CHECK(c_function(G, ld, delta) == Rational(0));
}

TEST_CASE("jack index census") {
    {
        JackIndexCensus c = jack_index_census(2, 1, 2);
        CHECK(c.box_count == 25);
        CHECK(c.q_count == 1);
        CHECK(c.witness == std::vector<long>{1, 3});
    }
    {
        JackIndexCensus c = jack_index_census(3, 1, 2);
        CHECK(c.box_count == 64);
        CHECK(c.q_count == 1);
        CHECK(c.witness == std::vector<long>{2, 5});
    }
    {
        JackIndexCensus c = jack_index_census(3, 3, 2);
        CHECK(c.box_count == 16);
        CHECK(c.q_count == 1);
        CHECK(c.witness == std::vector<long>{0, 3});
    }
    CHECK_THROWS(jack_index_census(2, 3, 1));
}

TEST_CASE("gram results are thread-count independent") {
    ReflectionGroup G(GroupSpec::family_spec(3, 3, 2));
    BaseParam bp = base_parameter(G);
    Parameter sc = sigma_shift(bp.param);
    GramComputation g1(G, sc, 1), g4(G, sc, 4);
    GramReport r1 = g1.run(default_gram_cap(G));
    GramReport r4 = g4.run(default_gram_cap(G));
    REQUIRE(r1.layers.size() == r4.layers.size());
    for (size_t i = 0; i < r1.layers.size(); ++i) CHECK(r1.layers[i].rank == r4.layers[i].rank);
    for (size_t d = 0; d < r1.layers.size(); ++d) CHECK(g1.pairing_at(d) == g4.pairing_at(d));
}

// Acceptance suite: one line per criterion, nonzero exit if any fails.
// Every expected value is pinned exactly; time limits are wall-clock.

#include <array>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "crg/cherednik.hpp"
#include "crg/diag_oracle.hpp"
#include "crg/invariants.hpp"

using namespace crg;

namespace {

int g_failures = 0;

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void report(int num, const std::string& name, bool pass, double secs, const std::string& detail) {
    std::ostringstream os;
    os << (pass ? "[PASS]" : "[FAIL]") << " criterion " << num << ": " << name << " (" << std::fixed;
    os.precision(1);
    os << secs << "s)";
    if (!detail.empty()) os << " -- " << detail;
    std::cout << os.str() << std::endl;
    if (!pass) ++g_failures;
}

ReflectionGroup build_g4() {
    auto F = CycField::get(3);
    auto w = CycNumber::zeta(F);
    auto one = CycNumber::one(F);
    CycMatrix s(F, 2, 2), t(F, 2, 2);
    s.at(0, 0) = w;
    s.at(0, 1) = one;
    s.at(1, 1) = one;
    t.at(0, 0) = one;
    t.at(1, 0) = -w;
    t.at(1, 1) = w;
    return ReflectionGroup(GroupSpec::from_generators(3, {s, t}, "G4"));
}

const std::vector<std::tuple<long, long, long>> kFamilyList{
    {2, 1, 2}, {3, 1, 2}, {4, 1, 2}, {4, 2, 2}, {3, 3, 2}, {4, 4, 2}, {2, 1, 3}, {3, 1, 3}};

std::string run_cli_capture(const std::string& args, int& exit_code) {
    std::string cmd = std::string(CRG_CLI_PATH) + " " + args + " 2>/dev/null";
    std::array<char, 4096> buf{};
    std::string out;
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return out;
    }
    size_t got;
    while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) out.append(buf.data(), got);
    int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

void criterion1() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (auto [l, m, n] : kFamilyList) {
        ReflectionGroup G(GroupSpec::family_spec(l, m, n));
        GroupStats st = G.stats();
        long lm = l / m;
        long N = l * n * (n - 1) / 2 + n * (lm - 1);
        long Nstar = l * n * (n - 1) / 2 + (lm > 1 ? n : 0);
        long g = l * (n - 1) + 2 * (lm - 1);
        bool here = st.N == N && st.Nstar == Nstar && st.g_integral && st.g == Rational(g);
        if (!here) {
            ok = false;
            detail += G.spec().description + " mismatch; ";
        }
    }
    double secs = seconds_since(t0);
    if (secs >= 5.0) ok = false;
    report(1, "group invariants match closed forms", ok, secs, detail);
}

void criterion2() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (auto [l, m, n] : kFamilyList) {
        ReflectionGroup G(GroupSpec::family_spec(l, m, n));
        std::vector<long> expect;
        for (long i = 1; i < n; ++i) expect.push_back(i * l);
        expect.push_back(n * l / m);
        std::sort(expect.begin(), expect.end());
        if (molien_degrees(G) != expect) {
            ok = false;
            detail += G.spec().description + " degrees wrong; ";
        }
    }
    double secs = seconds_since(t0);
    if (secs >= 10.0) ok = false;
    report(2, "Molien degrees with re-expansion certificate", ok, secs, detail);
}

bool degree_duality_holds(const std::vector<long>& d, long g) {
    size_t n = d.size();
    for (size_t i = 0; i < n; ++i)
        if (d[i] + d[n - 1 - i] != g + 2) return false;
    return true;
}

void criterion3() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (auto [l, m, n] : std::vector<std::tuple<long, long, long>>{{2, 1, 2}, {3, 1, 2}, {4, 1, 2}, {3, 1, 3}}) {
        ReflectionGroup G(GroupSpec::family_spec(l, m, n));
        if (!degree_duality_holds(molien_degrees(G), G.stats().g.to_long())) {
            ok = false;
            detail += G.spec().description + "; ";
        }
    }
    ReflectionGroup G4 = build_g4();
    auto d4 = molien_degrees(G4);
    if (d4 != std::vector<long>{4, 6} || G4.stats().g != Rational(8) || !degree_duality_holds(d4, 8)) {
        ok = false;
        detail += "G4; ";
    }
    report(3, "degree duality d_i + d_{n-i+1} = g + 2", ok, seconds_since(t0), detail);
}

void criterion4() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    {
        ReflectionGroup G(GroupSpec::family_spec(3, 1, 2));
        NumerologyReport rep = numerology_report(G);
        bool here = rep.find("index_identity")->pass && rep.find("catalan")->pass &&
                    rep.catalan == Rational(6);
        if (!here) {
            ok = false;
            detail += "G(3,1,2) Cat=" + rep.catalan.to_string() + "; ";
        }
    }
    {
        ReflectionGroup G4 = build_g4();
        NumerologyReport rep = numerology_report(G4);
        bool here = rep.find("index_identity")->pass && rep.find("catalan")->pass &&
                    rep.catalan == Rational(5);
        if (!here) {
            ok = false;
            detail += "G4 Cat=" + rep.catalan.to_string() + "; ";
        }
    }
    report(4, "coexponent identity and integral Catalan product", ok, seconds_since(t0), detail);
}

void criterion5() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    struct Case {
        long l, m, n;
        long long value;
    };
    for (const auto& e : std::vector<Case>{{2, 1, 2, 25}, {3, 1, 2, 64}, {4, 1, 3, 3375}}) {
        ReflectionGroup G(GroupSpec::family_spec(e.l, e.m, e.n));
        long g = G.stats().g.to_long();
        unsigned D = static_cast<unsigned>(g) + 1;
        KoszulGradedDim kg = koszul_graded_dim(G.rank(), D);
        if (kg.value_at_one != Rational(static_cast<long>(e.value))) {
            ok = false;
            detail += G.spec().description + " graded dim " + kg.value_at_one.to_string() + "; ";
        }
        KoszulDetResult kv = koszul_det_multiplicity(G, rep_defining(G), D, 0, 2);
        KoszulDetResult kvs = koszul_det_multiplicity(G, rep_dual(G), D, 0, 2);
        if (!(kv.is_monomial || kvs.is_monomial)) {
            ok = false;
            detail += G.spec().description + " no monomial det series; ";
        }
    }
    double secs = seconds_since(t0);
    if (secs >= 30.0) ok = false;
    report(5, "Koszul graded dimension (g+1)^n and monomial det series", ok, secs, detail);
}

void criterion6() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    struct Case {
        long l, m, n;
        long long dim;
    };
    for (const auto& e :
         std::vector<Case>{{2, 1, 2, 25}, {3, 3, 2, 16}, {2, 1, 1, 3}, {3, 1, 2, 64}}) {
        ReflectionGroup G(GroupSpec::family_spec(e.l, e.m, e.n));
        for (const auto& eps : {Rational(0), Rational(1, 97), Rational(1, 101)}) {
            LowestReport rep = lowest_module(G, eps, 2);
            bool here = rep.gram.terminated && rep.gram.total == e.dim && rep.gram.det_total == 1 &&
                        rep.singular.mult_V + rep.singular.mult_Vstar >= 1;
            if (!here) {
                ok = false;
                detail += G.spec().description + " eps=" + eps.to_string() + " dim=" +
                          std::to_string(rep.gram.total) + " det=" + std::to_string(rep.gram.det_total) + "; ";
            }
        }
    }
    double secs = seconds_since(t0);
    if (secs >= 300.0) ok = false;
    report(6, "Dunkl Gram dimensions (g+1)^n, det multiplicity 1, singular subspace", ok, secs, detail);
}

void criterion7() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    std::mt19937 rng(2024);
    std::uniform_int_distribution<int> coeff(-3, 3);
    std::uniform_int_distribution<int> numo(-4, 4);
    std::uniform_int_distribution<int> deno(1, 5);
    for (auto [l, m, n] : std::vector<std::tuple<long, long, long>>{{2, 1, 2}, {3, 3, 2}, {3, 1, 2}}) {
        ReflectionGroup G(GroupSpec::family_spec(l, m, n));
        const CycField* F = G.field();
        for (int pt = 0; pt < 3 && ok; ++pt) {
            Parameter c = Parameter::zero(G);
            for (auto& orb : c.c)
                for (size_t j = 1; j < orb.size(); ++j) orb[j] = Rational(numo(rng), deno(rng));
            DunklContext ctx(G, c);
            std::vector<CycNumber> scales;
            for (size_t h = 0; h < G.hyperplanes().size(); ++h)
                scales.push_back(CycNumber::from_rational(F, Rational(static_cast<long>(h) + 2, 3)));
            DunklContext scaled(G, c, scales);
            for (int t = 0; t < 20 && ok; ++t) {
                MultiPoly f(F, static_cast<int>(G.rank()));
                for (int term = 0; term < 5; ++term) {
                    Exps e(G.rank(), 0);
                    int rem = static_cast<int>(rng() % 6);
                    for (unsigned i = 0; i < G.rank(); ++i) {
                        int v = (i + 1 == G.rank()) ? rem : static_cast<int>(rng() % (rem + 1));
                        e[i] = v;
                        rem -= v;
                    }
                    std::vector<Rational> cv(F->degree());
                    for (auto& x : cv) x = Rational(coeff(rng));
                    f.add_term(e, CycNumber(F, cv));
                }
                for (unsigned i = 0; i < G.rank() && ok; ++i)
                    for (unsigned j = i + 1; j < G.rank() && ok; ++j) {
                        if (ctx.apply(i, ctx.apply(j, f)) != ctx.apply(j, ctx.apply(i, f))) {
                            ok = false;
                            detail += G.spec().description + " commutator; ";
                        }
                    }
                for (unsigned i = 0; i < G.rank() && ok; ++i)
                    if (ctx.apply(i, f) != scaled.apply(i, f)) {
                        ok = false;
                        detail += G.spec().description + " normal-scale dependence; ";
                    }
            }
        }
    }
    report(7, "Dunkl operators commute and ignore hyperplane-form scaling", ok, seconds_since(t0), detail);
}

void criterion8() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    {
        ReflectionGroup G(GroupSpec::family_spec(3, 3, 2));
        DiagOracle O(G, 50, 2);
        BigradedTable t = O.hilbert_table();
        if (!(t.total == 16 && t.det_multiplicity == 5 && t.symmetric() && t.margin_x() == 6 &&
              t.margin_y() == 6)) {
            ok = false;
            detail += "G(3,3,2) dim=" + std::to_string(t.total) + " det=" +
                      std::to_string(t.det_multiplicity) + "; ";
        }
    }
    {
        ReflectionGroup G(GroupSpec::family_spec(2, 1, 1));
        DiagOracle O(G, 50, 2);
        BigradedTable t = O.hilbert_table();
        if (!(t.total == 3 && t.symmetric() && t.margin_x() == 2 && t.margin_y() == 2)) {
            ok = false;
            detail += "G(2,1,1) dim=" + std::to_string(t.total) + "; ";
        }
    }
    {
        ReflectionGroup G(GroupSpec::family_spec(2, 1, 2));
        DiagOracle O(G, 50, 2);
        BigradedTable t = O.hilbert_table();
        if (!(t.total >= 25 && t.det_multiplicity >= 6 && t.symmetric() && t.margin_x() == 8 &&
              t.margin_y() == 8)) {
            ok = false;
            detail += "G(2,1,2) dim=" + std::to_string(t.total) + " det=" +
                      std::to_string(t.det_multiplicity) + "; ";
        }
    }
    double secs = seconds_since(t0);
    if (secs >= 600.0) ok = false;
    report(8, "diagonal coinvariant oracle vs theory", ok, secs, detail);
}

void criterion9() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (auto [l, m, n] : std::vector<std::tuple<long, long, long>>{{2, 1, 2}, {3, 3, 2}, {2, 1, 1}, {3, 1, 2}}) {
        ReflectionGroup G(GroupSpec::family_spec(l, m, n));
        long g = G.stats().g.to_long();
        JackIndexCensus census = jack_index_census(l, m, n);
        KoszulGradedDim kg = koszul_graded_dim(G.rank(), static_cast<unsigned>(g) + 1);
        LowestReport low = lowest_module(G, Rational(0), 2);
        bool here = Rational(static_cast<long>(census.box_count)) == kg.value_at_one &&
                    census.box_count == low.gram.total && census.q_count == 1;
        if (!here) {
            ok = false;
            detail += G.spec().description + " census=" + std::to_string(census.box_count) +
                      " gram=" + std::to_string(low.gram.total) + "; ";
        }
    }
    report(9, "(g+1)^n three ways: census = Koszul value = Gram total", ok, seconds_since(t0), detail);
}

void criterion10() {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    std::vector<std::string> cmds{
        "group --spec \"G(3,3,2)\"",   "numerology --spec \"G(3,3,2)\"", "koszul --spec \"G(3,3,2)\"",
        "lowest --spec \"G(3,3,2)\"",  "oracle --spec \"G(3,3,2)\"",     "lowest --spec \"G(2,1,1)\"",
        "oracle --spec \"G(2,1,2)\" --format csv"};
    for (const auto& cmd : cmds) {
        int ec1 = 0, ec8 = 0;
        std::string o1 = run_cli_capture(cmd + " --threads 1", ec1);
        std::string o8 = run_cli_capture(cmd + " --threads 8", ec8);
        if (ec1 != ec8 || o1 != o8 || o1.empty()) {
            ok = false;
            detail += cmd + " differs; ";
        }
    }
    report(10, "byte-identical reports across thread counts", ok, seconds_since(t0), detail);
}

}  // namespace

int main() {
    criterion1();
    criterion2();
    criterion3();
    criterion4();
    criterion5();
    criterion6();
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures == 0) {
        std::cout << "acceptance: all criteria passed" << std::endl;
        return 0;
    }
    std::cout << "acceptance: " << g_failures << " criteria FAILED" << std::endl;
    return 1;
}

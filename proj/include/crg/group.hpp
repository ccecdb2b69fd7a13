#ifndef CRG_GROUP_HPP
#define CRG_GROUP_HPP

#include <deque>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "crg/matrix.hpp"

namespace crg {

// Either family parameters for G(l,m,n) or an explicit generator list.
struct GroupSpec {
    bool family = true;
    long l = 0, m = 0, n = 0;
    unsigned conductor = 1;
    std::vector<CycMatrix> generators;
    std::string description;

    static GroupSpec family_spec(long l, long m, long n) {
        GroupSpec s;
        s.family = true;
        s.l = l;
        s.m = m;
        s.n = n;
        s.conductor = static_cast<unsigned>(l);
        s.description = "G(" + std::to_string(l) + "," + std::to_string(m) + "," + std::to_string(n) + ")";
        return s;
    }
    static GroupSpec from_generators(unsigned conductor, std::vector<CycMatrix> gens,
                                     std::string desc = "generators") {
        GroupSpec s;
        s.family = false;
        s.conductor = conductor;
        s.generators = std::move(gens);
        s.description = std::move(desc);
        return s;
    }
};

struct HyperplaneRecord {
    std::vector<CycNumber> normal;  // covector, first nonzero coordinate scaled to 1
    std::vector<int> stabilizer;    // element indices of the cyclic pointwise stabilizer
    unsigned order = 1;             // n_H
    int orbit = -1;
};

struct GroupStats {
    long order = 0;
    long N = 0;      // reflections
    long Nstar = 0;  // hyperplanes
    Rational h, g;
    bool h_integral = false, g_integral = false;
    bool family_formulas_ok = true;  // closed-form cross-check for family specs
};

class ReflectionGroup {
public:
    explicit ReflectionGroup(const GroupSpec& spec, size_t closure_cap = 10000) : spec_(spec) {
        if (spec.family) {
            validate_family(spec);
            F_ = CycField::get(static_cast<unsigned>(spec.l));
            rank_ = static_cast<unsigned>(spec.n);
            build_family_generators();
        } else {
            if (spec.generators.empty())
                throw std::invalid_argument("build_group: no generators given");
            F_ = CycField::get(spec.conductor);
            rank_ = spec.generators[0].rows();
            for (const auto& g : spec.generators) {
                if (g.rows() != rank_ || g.cols() != rank_)
                    throw std::invalid_argument("build_group: generators must be square of equal size");
                if (g.field() != F_)
                    throw std::invalid_argument("build_group: generator conductor mismatch");
                if (g.rank() != rank_)
                    throw std::invalid_argument("build_group: generator not invertible");
                gens_.push_back(g);
            }
        }
        close_under_products(closure_cap);
        index_inverses();
        find_reflections_and_hyperplanes();
        find_orbits();
        run_validation_checks();
    }

    const CycField* field() const { return F_; }
    unsigned rank() const { return rank_; }
    const GroupSpec& spec() const { return spec_; }
    long order() const { return static_cast<long>(elems_.size()); }
    const std::vector<CycMatrix>& elements() const { return elems_; }
    const CycMatrix& element(int i) const { return elems_[static_cast<size_t>(i)]; }
    int identity_index() const { return identity_idx_; }
    int inverse_index(int i) const { return inv_[static_cast<size_t>(i)]; }
    const CycNumber& det_of(int i) const { return dets_[static_cast<size_t>(i)]; }
    const std::vector<int>& reflection_indices() const { return reflections_; }
    const std::vector<HyperplaneRecord>& hyperplanes() const { return hyperplanes_; }
    const std::vector<std::vector<int>>& orbits() const { return orbits_; }
    unsigned orbit_order(int o) const { return hyperplanes_[static_cast<size_t>(orbits_[static_cast<size_t>(o)][0])].order; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    int index_of(const CycMatrix& m) const {
        auto it = index_.find(m.to_key());
        return it == index_.end() ? -1 : it->second;
    }

    GroupStats stats() const {
        GroupStats s;
        s.order = order();
        s.N = static_cast<long>(reflections_.size());
        s.Nstar = static_cast<long>(hyperplanes_.size());
        s.h = Rational(s.N + s.Nstar, static_cast<long>(rank_));
        s.g = Rational(2 * s.N, static_cast<long>(rank_));
        s.h_integral = s.h.is_integer();
        s.g_integral = s.g.is_integer();
        if (spec_.family) {
            long l = spec_.l, m = spec_.m, n = spec_.n;
            long lm = l / m;
            long N_formula = l * n * (n - 1) / 2 + n * (lm - 1);
            long Nstar_formula = l * n * (n - 1) / 2 + (lm > 1 ? n : 0);
            long g_formula = l * (n - 1) + 2 * (lm - 1);
            s.family_formulas_ok = (s.N == N_formula) && (s.Nstar == Nstar_formula) &&
                                   s.g_integral && (s.g == Rational(g_formula));
        }
        return s;
    }

    long max_stabilizer_order() const {
        long m = 1;
        for (const auto& h : hyperplanes_) m = std::max(m, static_cast<long>(h.order));
        return m;
    }

private:
    static void validate_family(const GroupSpec& spec) {
        if (spec.l <= 0 || spec.m <= 0 || spec.n <= 0)
            throw std::invalid_argument("build_group: family parameters must be positive");
        if (spec.l % spec.m != 0)
            throw std::invalid_argument("build_group: m must divide l");
        if (spec.l == 1)
            throw std::invalid_argument(
                "build_group: G(1,1,n) is not supported; use a rank-2 substitute such as G(3,3,2)");
        if (spec.n == 1 && spec.l == spec.m)
            throw std::invalid_argument("build_group: G(l,l,1) is the trivial group");
    }

    void build_family_generators() {
        long l = spec_.l, m = spec_.m, n = spec_.n;
        CycNumber zeta = CycNumber::zeta(F_);
        // adjacent transpositions
        for (long i = 0; i + 1 < n; ++i) {
            CycMatrix s = CycMatrix::identity(F_, rank_);
            s.at(static_cast<unsigned>(i), static_cast<unsigned>(i)) = CycNumber::zero(F_);
            s.at(static_cast<unsigned>(i + 1), static_cast<unsigned>(i + 1)) = CycNumber::zero(F_);
            s.at(static_cast<unsigned>(i), static_cast<unsigned>(i + 1)) = CycNumber::one(F_);
            s.at(static_cast<unsigned>(i + 1), static_cast<unsigned>(i)) = CycNumber::one(F_);
            gens_.push_back(s);
        }
        // allowed diagonal generator diag(zeta^m, 1, ..., 1)
        if (m < l) {
            CycMatrix d = CycMatrix::identity(F_, rank_);
            d.at(0, 0) = zeta.pow(m);
            gens_.push_back(d);
        }
        // conjugated transposition, product of nonzero entries equal to 1
        if (n >= 2) {
            CycMatrix t = CycMatrix::identity(F_, rank_);
            t.at(0, 0) = CycNumber::zero(F_);
            t.at(1, 1) = CycNumber::zero(F_);
            t.at(0, 1) = zeta;
            t.at(1, 0) = zeta.inverse();
            gens_.push_back(t);
        }
    }

    void close_under_products(size_t cap) {
        CycMatrix id = CycMatrix::identity(F_, rank_);
        elems_.push_back(id);
        index_.emplace(id.to_key(), 0);
        identity_idx_ = 0;
        std::deque<int> work{0};
        while (!work.empty()) {
            int i = work.front();
            work.pop_front();
            for (const auto& g : gens_) {
                CycMatrix p = elems_[static_cast<size_t>(i)] * g;
                std::string key = p.to_key();
                if (index_.count(key)) continue;
                if (elems_.size() >= cap)
                    throw std::runtime_error("build_group: closure cap exceeded (" + std::to_string(cap) + ")");
                int idx = static_cast<int>(elems_.size());
                elems_.push_back(std::move(p));
                index_.emplace(std::move(key), idx);
                work.push_back(idx);
            }
        }
        dets_.reserve(elems_.size());
        for (const auto& w : elems_) dets_.push_back(w.det());
    }

    void index_inverses() {
        inv_.assign(elems_.size(), -1);
        for (size_t i = 0; i < elems_.size(); ++i) {
            if (inv_[i] >= 0) continue;
            CycMatrix m = elems_[i].inverse();
            int j = index_of(m);
            if (j < 0) throw std::logic_error("build_group: closure not inverse-closed");
            inv_[i] = j;
            inv_[static_cast<size_t>(j)] = static_cast<int>(i);
        }
    }

    void find_reflections_and_hyperplanes() {
        CycMatrix id = CycMatrix::identity(F_, rank_);
        std::unordered_map<std::string, int> hyp_index;
        for (size_t i = 0; i < elems_.size(); ++i) {
            if (static_cast<int>(i) == identity_idx_) continue;
            CycMatrix d = elems_[i] - id;
            if (d.rank() != 1) continue;
            reflections_.push_back(static_cast<int>(i));
            std::vector<CycNumber> normal = normalized_row_space(d);
            std::string key = normal_key(normal);
            auto it = hyp_index.find(key);
            int h;
            if (it == hyp_index.end()) {
                h = static_cast<int>(hyperplanes_.size());
                HyperplaneRecord rec;
                rec.normal = std::move(normal);
                rec.stabilizer.push_back(identity_idx_);
                hyperplanes_.push_back(std::move(rec));
                hyp_index.emplace(key, h);
            } else {
                h = it->second;
            }
            hyperplanes_[static_cast<size_t>(h)].stabilizer.push_back(static_cast<int>(i));
        }
        for (auto& rec : hyperplanes_) rec.order = static_cast<unsigned>(rec.stabilizer.size());
    }

    // rank-1 matrix: any nonzero row spans the row space, which is the
    // annihilator of the fixed hyperplane
    std::vector<CycNumber> normalized_row_space(const CycMatrix& d) const {
        for (unsigned r = 0; r < d.rows(); ++r) {
            std::vector<CycNumber> row;
            bool nonzero = false;
            for (unsigned c = 0; c < d.cols(); ++c) {
                row.push_back(d.at(r, c));
                if (!d.at(r, c).is_zero()) nonzero = true;
            }
            if (nonzero) return normalize_covector(std::move(row));
        }
        throw std::logic_error("normalized_row_space: zero matrix");
    }

    static std::vector<CycNumber> normalize_covector(std::vector<CycNumber> v) {
        for (const auto& x : v) {
            if (x.is_zero()) continue;
            CycNumber inv = x.inverse();
            for (auto& y : v) y *= inv;
            return v;
        }
        throw std::logic_error("normalize_covector: zero covector");
    }

    static std::string normal_key(const std::vector<CycNumber>& v) {
        std::string key;
        for (const auto& x : v) key += x.to_key() + "|";
        return key;
    }

    void find_orbits() {
        std::unordered_map<std::string, int> hyp_index;
        for (size_t h = 0; h < hyperplanes_.size(); ++h)
            hyp_index.emplace(normal_key(hyperplanes_[h].normal), static_cast<int>(h));
        std::vector<int> orbit_of(hyperplanes_.size(), -1);
        for (size_t h = 0; h < hyperplanes_.size(); ++h) {
            if (orbit_of[h] >= 0) continue;
            int o = static_cast<int>(orbits_.size());
            orbits_.emplace_back();
            std::deque<int> work{static_cast<int>(h)};
            orbit_of[h] = o;
            while (!work.empty()) {
                int cur = work.front();
                work.pop_front();
                orbits_[static_cast<size_t>(o)].push_back(cur);
                for (size_t wi = 0; wi < elems_.size(); ++wi) {
                    std::vector<CycNumber> img = apply_inverse_covector(hyperplanes_[static_cast<size_t>(cur)].normal,
                                                                        static_cast<int>(wi));
                    auto it = hyp_index.find(normal_key(normalize_covector(std::move(img))));
                    if (it == hyp_index.end())
                        throw std::logic_error("find_orbits: hyperplane image not in arrangement");
                    int t = it->second;
                    if (orbit_of[static_cast<size_t>(t)] < 0) {
                        orbit_of[static_cast<size_t>(t)] = o;
                        work.push_back(t);
                    }
                }
            }
        }
        for (size_t h = 0; h < hyperplanes_.size(); ++h) hyperplanes_[h].orbit = orbit_of[h];
    }

    // covector alpha composed with w^{-1}: row vector alpha * M_w^{-1}
    std::vector<CycNumber> apply_inverse_covector(const std::vector<CycNumber>& alpha, int w) const {
        const CycMatrix& mi = elems_[static_cast<size_t>(inv_[static_cast<size_t>(w)])];
        std::vector<CycNumber> out(rank_, CycNumber::zero(F_));
        for (unsigned j = 0; j < rank_; ++j)
            for (unsigned i = 0; i < rank_; ++i) {
                if (alpha[i].is_zero()) continue;
                out[j] += alpha[i] * mi.at(i, j);
            }
        return out;
    }

    void run_validation_checks() {
        // reflection count by orbit
        long acc = 0;
        for (const auto& hrec : hyperplanes_) acc += static_cast<long>(hrec.order) - 1;
        if (acc != static_cast<long>(reflections_.size()))
            throw std::logic_error("build_group: sum of (n_H - 1) does not match reflection count");
        if (spec_.family) {
            long expected = 1;
            for (long i = 0; i < spec_.n; ++i) expected *= spec_.l;
            for (long i = 2; i <= spec_.n; ++i) expected *= i;
            expected /= spec_.m;
            if (expected != order())
                throw std::logic_error("build_group: closure order " + std::to_string(order()) +
                                       " does not match |G(l,m,n)| = " + std::to_string(expected));
        }
        if (!is_irreducible()) warnings_.push_back("group representation appears reducible (commutant dimension > 1)");
    }

    // Schur commutant criterion: the matrices commuting with every
    // generator form a 1-dimensional space iff the representation is
    // irreducible.
    bool is_irreducible() const {
        // condition gX - Xg = 0 per generator; unknowns X_{ij} row-major
        unsigned n2 = rank_ * rank_;
        CycMatrix sys(F_, static_cast<unsigned>(gens_.size()) * n2, n2);
        unsigned row = 0;
        for (const auto& g : gens_) {
            for (unsigned i = 0; i < rank_; ++i)
                for (unsigned j = 0; j < rank_; ++j) {
                    for (unsigned k = 0; k < rank_; ++k) {
                        sys.at(row, k * rank_ + j) += g.at(i, k);   // (gX)_{ij}
                        sys.at(row, i * rank_ + k) -= g.at(k, j);   // (Xg)_{ij}
                    }
                    ++row;
                }
        }
        return n2 - sys.rank() == 1;
    }

    GroupSpec spec_;
    const CycField* F_ = nullptr;
    unsigned rank_ = 0;
    std::vector<CycMatrix> gens_;
    std::vector<CycMatrix> elems_;
    std::unordered_map<std::string, int> index_;
    std::vector<int> inv_;
    std::vector<CycNumber> dets_;
    std::vector<int> reflections_;
    std::vector<HyperplaneRecord> hyperplanes_;
    std::vector<std::vector<int>> orbits_;
    std::vector<std::string> warnings_;
    int identity_idx_ = 0;
};

// A representation given by one matrix per group element, in element order.
struct Representation {
    std::string name;
    unsigned dim = 0;
    std::vector<CycMatrix> mats;
    std::vector<CycNumber> chars;

    CycNumber char_of(int i) const { return chars[static_cast<size_t>(i)]; }
};

namespace detail {
inline void finalize_rep(Representation& rep, const ReflectionGroup& G) {
    rep.chars.reserve(rep.mats.size());
    for (const auto& m : rep.mats) rep.chars.push_back(m.trace());
    // multiplicativity spot-check on a few deterministic element pairs
    std::mt19937 rng(12345);
    long n = G.order();
    for (int t = 0; t < 5; ++t) {
        int a = static_cast<int>(rng() % static_cast<unsigned long>(n));
        int b = static_cast<int>(rng() % static_cast<unsigned long>(n));
        int ab = G.index_of(G.element(a) * G.element(b));
        if (ab < 0 || rep.mats[static_cast<size_t>(a)] * rep.mats[static_cast<size_t>(b)] !=
                          rep.mats[static_cast<size_t>(ab)])
            throw std::logic_error("Representation '" + rep.name + "' is not multiplicative");
    }
}
}  // namespace detail

inline Representation rep_defining(const ReflectionGroup& G) {
    Representation r;
    r.name = "V";
    r.dim = G.rank();
    r.mats = G.elements();
    detail::finalize_rep(r, G);
    return r;
}

inline Representation rep_dual(const ReflectionGroup& G) {
    Representation r;
    r.name = "Vstar";
    r.dim = G.rank();
    r.mats.reserve(static_cast<size_t>(G.order()));
    for (long i = 0; i < G.order(); ++i)
        r.mats.push_back(G.element(G.inverse_index(static_cast<int>(i))).transpose());
    detail::finalize_rep(r, G);
    return r;
}

inline Representation rep_det(const ReflectionGroup& G) {
    Representation r;
    r.name = "det";
    r.dim = 1;
    for (long i = 0; i < G.order(); ++i) {
        CycMatrix m(G.field(), 1, 1);
        m.at(0, 0) = G.det_of(static_cast<int>(i));
        r.mats.push_back(std::move(m));
    }
    detail::finalize_rep(r, G);
    return r;
}

inline Representation rep_det_inverse(const ReflectionGroup& G) {
    Representation r;
    r.name = "det_inv";
    r.dim = 1;
    for (long i = 0; i < G.order(); ++i) {
        CycMatrix m(G.field(), 1, 1);
        m.at(0, 0) = G.det_of(static_cast<int>(i)).inverse();
        r.mats.push_back(std::move(m));
    }
    detail::finalize_rep(r, G);
    return r;
}

inline Representation rep_trivial(const ReflectionGroup& G) {
    Representation r;
    r.name = "triv";
    r.dim = 1;
    for (long i = 0; i < G.order(); ++i) r.mats.push_back(CycMatrix::identity(G.field(), 1));
    detail::finalize_rep(r, G);
    return r;
}

inline Representation rep_exterior(const ReflectionGroup& G, unsigned k) {
    if (k == 0) {
        Representation r = rep_trivial(G);
        r.name = "ext0";
        return r;
    }
    Representation r;
    r.name = "ext" + std::to_string(k);
    r.dim = static_cast<unsigned>(subsets_lex(G.rank(), k).size());
    for (long i = 0; i < G.order(); ++i)
        r.mats.push_back(exterior_power(G.element(static_cast<int>(i)), k));
    detail::finalize_rep(r, G);
    return r;
}

// Local data: for each hyperplane orbit and 0 <= j < n_H, the dimension of
// the e_{H,j}-isotype of E, computed as the exact projector trace
// (1/n_H) sum over the stabilizer of det(w)^{-j} char_E(w).
struct LocalData {
    std::vector<std::vector<long>> orbit_data;  // [orbit][j]
    unsigned dim = 0;
};

inline LocalData local_data(const ReflectionGroup& G, const Representation& E) {
    LocalData out;
    out.dim = E.dim;
    out.orbit_data.resize(G.orbits().size());
    for (size_t o = 0; o < G.orbits().size(); ++o) {
        bool first_in_orbit = true;
        for (int h : G.orbits()[o]) {
            const HyperplaneRecord& rec = G.hyperplanes()[static_cast<size_t>(h)];
            unsigned nH = rec.order;
            std::vector<long> vals(nH, 0);
            long sum = 0;
            for (unsigned j = 0; j < nH; ++j) {
                CycNumber acc = CycNumber::zero(G.field());
                for (int wi : rec.stabilizer)
                    acc += G.det_of(wi).pow(-static_cast<long>(j)) * E.char_of(wi);
                CycNumber val = acc * Rational(1, static_cast<long>(nH));
                if (!val.is_rational() || !val.rational_part().is_nonneg_integer())
                    throw std::logic_error("local_data: projector trace is not a nonnegative integer (rep '" +
                                           E.name + "')");
                vals[j] = val.rational_part().to_long();
                sum += vals[j];
            }
            if (sum != static_cast<long>(E.dim))
                throw std::logic_error("local_data: isotype dimensions do not sum to dim E");
            if (first_in_orbit) {
                out.orbit_data[o] = vals;
                first_in_orbit = false;
            } else if (out.orbit_data[o] != vals) {
                throw std::logic_error("local_data: values not constant on a hyperplane orbit");
            }
        }
    }
    return out;
}

struct AmenabilityReport {
    bool amenable = false;
    std::vector<long> C_per_orbit;  // C(H,E) for one hyperplane per orbit
};

inline AmenabilityReport is_amenable(const ReflectionGroup& G, const Representation& E) {
    LocalData ld = local_data(G, E);
    AmenabilityReport rep;
    rep.amenable = true;
    for (size_t o = 0; o < ld.orbit_data.size(); ++o) {
        long C = 0;
        for (size_t j = 0; j < ld.orbit_data[o].size(); ++j) C += static_cast<long>(j) * ld.orbit_data[o][j];
        rep.C_per_orbit.push_back(C);
        unsigned nH = G.orbit_order(static_cast<int>(o));
        if (C > static_cast<long>(nH) - 1) rep.amenable = false;
    }
    return rep;
}

}  // namespace crg

#endif

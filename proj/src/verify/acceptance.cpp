#include "widomlab/verify/acceptance.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <random>
#include <sstream>

#include "widomlab/chebyshev.hpp"
#include "widomlab/orthopoly.hpp"
#include "widomlab/potential.hpp"
#include "widomlab/verify/brute_force.hpp"

namespace widom::verify {

const std::vector<CatalogEntry>& preimage_catalog() {
    using V = PreimageVariant;
    static const std::vector<CatalogEntry> catalog = {
        {"one_plus 3x", {V::OnePlus, {0.0, 3.0}}},
        {"one_plus 3x - 0.15", {V::OnePlus, {-0.15, 3.0}}},
        {"one_plus 5x", {V::OnePlus, {0.0, 5.0}}},
        {"one_plus 2x - 1", {V::OnePlus, {-1.0, 2.0}}},
        {"one_plus 4x^2 - 2x - 1", {V::OnePlus, {-1.0, -2.0, 4.0}}},
        {"one_minus 3x", {V::OneMinus, {0.0, 3.0}}},
        {"one_minus 4x^2 + 2x - 1", {V::OneMinus, {-1.0, 2.0, 4.0}}},
        {"one_minus_sq 2x", {V::OneMinusSq, {0.0, 2.0}}},
        {"one_minus_sq 4x", {V::OneMinusSq, {0.0, 4.0}}},
        {"one_minus_sq 8x^2 - 2", {V::OneMinusSq, {-2.0, 0.0, 8.0}}},
    };
    return catalog;
}

const std::vector<NegativeControl>& negative_controls() {
    static const std::vector<NegativeControl> controls = {
        {"[-1,-0.5] u [0.5,1], sqrt(1+x)", normalize({{-1.0, -0.5}, {0.5, 1.0}}), WeightSpec::sqrt_one_plus(), 1},
        {"[-1,-0.2] u [0.1,1], sqrt(1+x)", normalize({{-1.0, -0.2}, {0.1, 1.0}}), WeightSpec::sqrt_one_plus(), 1},
        {"[-1,-0.6] u [-0.3,0.4], sqrt(1+x), n=2", normalize({{-1.0, -0.6}, {-0.3, 0.4}}), WeightSpec::sqrt_one_plus(), 2},
        {"[-0.4,0.3] u [0.7,1], sqrt(1-x)", normalize({{-0.4, 0.3}, {0.7, 1.0}}), WeightSpec::sqrt_one_minus(), 1},
        {"[-1,-0.3] u [0.3,1], sqrt(1-x^2)", normalize({{-1.0, -0.3}, {0.3, 1.0}}), WeightSpec::sqrt_one_minus_sq(), 1},
    };
    return controls;
}

namespace {

class Tally {
public:
    explicit Tally(CriterionResult& r) : r_(r) {}

    void expect(bool ok, const std::string& what) {
        ++r_.checks;
        if (!ok) {
            ++r_.failures;
            if (r_.detail.empty()) r_.detail = what;
        }
    }

    void near(double got, double want, double tol, const std::string& what) {
        expect(std::abs(got - want) <= tol, describe(what, got, want, tol));
    }

    void rel(double got, double want, double tol, const std::string& what) {
        expect(std::abs(got - want) <= tol * std::abs(want), describe(what, got, want, tol));
    }

    void at_least(double got, double bound, const std::string& what) {
        std::ostringstream os;
        os.precision(17);
        os << what << ": " << got << " < " << bound;
        expect(got >= bound, os.str());
    }

    void poly(const Poly& got, const Poly& want, double tol, const std::string& what) {
        const Poly d = got - want;
        double worst = 0.0;
        for (double v : d.coeffs()) worst = std::max(worst, std::abs(v));
        std::ostringstream os;
        os << what << ": coefficient deviation " << worst << " > " << tol;
        expect(got.degree() == want.degree() && worst <= tol, os.str());
    }

    template <typename F>
    void guard(const std::string& what, F&& f) {
        try {
            f();
        } catch (const std::exception& e) {
            expect(false, what + ": " + e.what());
        }
    }

private:
    static std::string describe(const std::string& what, double got, double want, double tol) {
        std::ostringstream os;
        os.precision(17);
        os << what << ": got " << got << ", want " << want << " (tol " << tol << ")";
        return os.str();
    }

    CriterionResult& r_;
};

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

// `bands` intervals covering exactly [lo, hi] at the ends, widths and gaps drawn
// from 0.05 + U(0, 1) before rescaling.
IntervalSet random_set(std::mt19937_64& rng, int bands, double lo, double hi) {
    const int pieces = 2 * bands - 1;
    std::vector<double> w(static_cast<std::size_t>(pieces));
    double total = 0.0;
    for (auto& v : w) total += v = 0.05 + uniform01(rng);
    std::vector<std::pair<double, double>> raw;
    double x = lo;
    for (int i = 0; i < pieces; ++i) {
        const double next = i + 1 == pieces ? hi : x + w[static_cast<std::size_t>(i)] * (hi - lo) / total;
        if (i % 2 == 0) raw.emplace_back(x, next);
        x = next;
    }
    return normalize(std::span<const std::pair<double, double>>(raw));
}

std::string label(const std::string& base, int n) { return base + " n=" + std::to_string(n); }

std::string set_label(const IntervalSet& s) {
    std::ostringstream os;
    os.precision(6);
    for (const Band& b : s.bands()) os << "[" << b.lo << "," << b.hi << "]";
    return os.str();
}

const char* kind_name(ChebyshevKind k) {
    switch (k) {
        case ChebyshevKind::First: return "first kind";
        case ChebyshevKind::Second: return "second kind";
        case ChebyshevKind::Third: return "third kind";
        case ChebyshevKind::Fourth: return "fourth kind";
    }
    return "?";
}

void closed_forms(Tally& t) {
    const auto eq = equilibrium(normalize({{-1.0, 1.0}}));
    const double expected[] = {2.0, 1.0, std::numbers::sqrt2, std::numbers::sqrt2};
    for (int k = 0; k < 4; ++k) {
        const auto kind = static_cast<ChebyshevKind>(k);
        for (int n = 1; n <= 20; ++n) {
            const std::string what = label(kind_name(kind), n);
            t.guard(what, [&] {
                const auto kp = kind_polynomial(kind, n);
                const auto sol = remez(eq, kp.weight, n);
                t.near(sol.widom_inf, expected[k], 1e-8, what + " W_inf");
                t.poly(sol.monomial(), kp.monic, 1e-8, what + " monic solution");
            });
        }
    }
}

void l2_equalities(Tally& t) {
    const auto eq = equilibrium(normalize({{-1.0, 1.0}}));
    const int pairs[][2] = {{0, 0}, {1, 1}, {0, 1}, {1, 0}};
    for (const auto& p : pairs) {
        const JacobiSpec mu{p[0], p[1], {-1.0, 1.0}};
        const std::string what = "alpha=" + std::to_string(p[0]) + " beta=" + std::to_string(p[1]);
        t.guard(what, [&] {
            const auto od = stieltjes(eq, mu, 12);
            for (int n = 1; n <= 12; ++n) {
                t.near(od.widom2_sq[static_cast<std::size_t>(n)], 2.0 * od.entropy, 1e-8, label(what, n) + " [W2]^2 vs 2S");
            }
        });
    }
}

void preimage_identities(Tally& t) {
    const PreimageSpec spec{PreimageVariant::OnePlus, {0.0, 3.0}};
    const double cap = std::cbrt(1.0 / 36.0);
    t.guard("one_plus 3x", [&] {
        const auto built = build_set(spec);
        const auto eq = equilibrium(built.set);
        t.near(eq.capacity(), cap, 1e-8, "Cap = 36^(-1/3)");
        const auto sol = remez(eq, spec.weight(), 1);
        t.near(sol.norm, 1.0 / 3.0, 1e-8, "t_1 = 1/3");
        const auto top = remez(eq, WeightSpec::unit(), 3);
        t.poly(top.monomial(), Poly({-1.0 / 18.0, 0.0, 1.0, 1.0}), 1e-8, "T_3 = (1+z) z^2 - 1/18");
        const auto oracle = exact_invariants(spec);
        t.expect(oracle.chebyshev_top_exact &&
                     *oracle.chebyshev_top_exact == RationalPoly({Rational(-1, 18), Rational(0), Rational(1), Rational(1)}),
                 "exact T_3 oracle");
        t.expect(oracle.cap_power_exact && *oracle.cap_power_exact == Rational(1, 36), "exact Cap^3 = 1/36");
        t.expect(built.branches.size() == 3, "three monotone branches");
        for (const Band& b : built.branches) t.near(eq.measure_of(b.lo, b.hi), 1.0 / 3.0, 1e-8, "branch mass 1/3");
        const auto od = stieltjes(eq, spec.measure(), 1);
        t.near(od.widom2_sq[1], 2.0 * cap, 1e-8, "[W2,1]^2 = 2 * 36^(-1/3)");
    });
}

void bound_sandwich(Tally& t) {
    std::mt19937_64 rng(0x5eed0004);
    for (int i = 0; i < 25; ++i) {
        const int bands = 1 + i % 4;
        const double lo = i % 3 == 0 ? -1.0 : -1.0 + 0.6 * uniform01(rng);
        const double hi = i % 4 == 1 ? 1.0 : 1.0 - 0.6 * uniform01(rng);
        const IntervalSet set = random_set(rng, bands, lo, hi);
        const std::string name = "set " + std::to_string(i) + " " + set_label(set);
        t.guard(name, [&] {
            const auto eq = equilibrium(set);
            for (const WeightSpec& w : {WeightSpec::sqrt_one_plus(), WeightSpec::sqrt_one_minus()}) {
                const auto b = sup_bounds(eq, w);
                const bool plus = w.kind == WeightKind::SqrtOnePlus;
                const bool strict = set.band_count() > 1 || (plus ? set.hull().lo > -1.0 : set.hull().hi < 1.0);
                for (int n = 1; n <= 8; ++n) {
                    const std::string what = label(name + " " + w.name(), n);
                    const auto sol = remez(eq, w, n);
                    t.at_least(sol.widom_inf - b.lower, -1e-8, what + " lower bound");
                    t.at_least(*b.upper - sol.widom_inf, -1e-8, what + " upper bound");
                    if (strict) t.at_least(*b.upper - sol.widom_inf, 1e-6, what + " strict upper bound");
                }
            }
        });
    }
    for (double b : {0.1, 0.6, 1.0}) {
        const IntervalSet set = normalize({{-1.0, b}});
        const std::string name = "[-1," + std::to_string(b) + "]";
        t.guard(name, [&] {
            const auto eq = equilibrium(set);
            const auto bounds = sup_bounds(eq, WeightSpec::sqrt_one_plus());
            t.near(*bounds.upper, bounds.lower, 1e-8, name + " bounds collapse");
            for (int n = 1; n <= 8; ++n) {
                const auto sol = remez(eq, WeightSpec::sqrt_one_plus(), n);
                t.near(sol.widom_inf, bounds.lower, 1e-8, label(name, n) + " W_inf = lower");
                t.near(sol.widom_inf, *bounds.upper, 1e-8, label(name, n) + " W_inf = upper");
            }
        });
    }
}

void improved_bound(Tally& t) {
    std::mt19937_64 rng(0x5eed0005);
    int pair = 0;
    for (int i = 0; i < 15; ++i) {
        // the 15 pairs (alpha, beta) in {0..3}^2 with alpha + beta >= 1
        ++pair;
        const JacobiSpec mu{pair / 4, pair % 4, {-1.0, 1.0}};
        const IntervalSet set = random_set(rng, 1 + i % 4, -1.0, 1.0);
        const std::string name = "set " + std::to_string(i) + " " + set_label(set) + " alpha=" +
                                 std::to_string(mu.alpha) + " beta=" + std::to_string(mu.beta);
        t.guard(name, [&] {
            const auto od = stieltjes(equilibrium(set), mu, 10);
            for (int n = 1; n <= 10; ++n) {
                const double w2 = od.widom2_sq[static_cast<std::size_t>(n)];
                t.at_least(w2, 2.0 * od.entropy - 1e-9, label(name, n) + " [W2]^2 >= 2S");
                t.at_least(w2, od.entropy - 1e-9, label(name, n) + " [W2]^2 >= S");
            }
        });
    }
    for (int i = 0; i < 15; ++i) {
        const JacobiSpec mu{i % 4, (i / 4) % 4, {-1.0, 1.0}};
        const double lo = -1.0 + 0.5 * uniform01(rng);
        const double hi = 1.0 - 0.5 * uniform01(rng);
        const IntervalSet set = random_set(rng, 1 + i % 4, lo, hi);
        const std::string name = "interior set " + std::to_string(i) + " " + set_label(set);
        t.guard(name, [&] {
            const auto od = stieltjes(equilibrium(set), mu, 10);
            for (int n = 1; n <= 10; ++n) {
                t.at_least(od.widom2_sq[static_cast<std::size_t>(n)], od.entropy - 1e-9, label(name, n) + " [W2]^2 >= S");
            }
        });
    }
}

void saturation(Tally& t) {
    for (const auto& entry : preimage_catalog()) {
        t.guard(entry.name, [&] {
            const auto r = saturation_verify(entry.spec, 1e-7);
            for (const auto& c : r.clauses) {
                std::ostringstream os;
                os << entry.name << " clause (" << c.id << ") " << c.name << " deviation " << c.deviation;
                t.expect(c.pass, os.str());
            }
        });
    }
    for (const auto& control : negative_controls()) {
        t.guard(control.name, [&] {
            const auto r = equality_check(control.set, control.weight, control.degree, 1e-7);
            for (char id : {'b', 'c'}) {
                const Clause* c = r.find(id);
                std::ostringstream os;
                os << control.name << " clause (" << id << ") should fail by 1e-6, deviation "
                   << (c ? c->deviation : 0.0);
                t.expect(c && !c->pass && c->deviation >= 1e-6, os.str());
            }
        });
    }
    t.guard("rejection of one_plus x", [&] {
        const auto a = check_admissibility(PreimageSpec{PreimageVariant::OnePlus, {0.0, 1.0}});
        t.expect(!a.admissible, "one_plus x must be rejected (critical value 4/27)");
    });
}

void enclosure(Tally& t) {
    std::mt19937_64 rng(0x5eed0007);
    for (int i = 0; i < 10; ++i) {
        const double lo = i % 2 == 0 ? -1.0 : -1.0 + 0.5 * uniform01(rng);
        const double hi = 1.0 - 0.5 * uniform01(rng);
        const IntervalSet set = random_set(rng, 1 + i % 4, lo, hi);
        const int n = 1 + i % 6;
        const std::string name = label("set " + std::to_string(i) + " " + set_label(set), n);
        t.guard(name, [&] {
            const auto w = WeightSpec::sqrt_one_plus();
            const auto sol = remez(equilibrium(set), w, n);
            const auto kn = enclosing_preimage(set, w, sol);
            bool inside = true;
            for (const Band& b : set.bands()) {
                bool found = false;
                for (const Band& c : kn.bands()) found = found || (c.lo - 1e-9 <= b.lo && b.hi <= c.hi + 1e-9);
                inside = inside && found;
            }
            t.expect(inside, name + " K inside K_n");
            t.expect(kn.hull().lo >= -1.0 - 1e-9 && kn.hull().hi <= 1.0 + 1e-9, name + " K_n inside [-1,1]");
            const double lhs = (2 * n + 1) * equilibrium(kn).log_capacity();
            const double rhs = std::log(sol.norm * sol.norm / 4.0);
            t.near(std::expm1(lhs - rhs), 0.0, 1e-8, name + " Cap(K_n)^(2n+1) / (t_n^2/4) - 1");
        });
    }
}

void oracles(Tally& t) {
    std::mt19937_64 rng(0x5eed0008);
    std::vector<IntervalSet> sets = {normalize({{-1.0, 1.0}}), normalize({{-1.0, -0.5}, {0.5, 1.0}}),
                                     build_set(preimage_catalog()[0].spec).set};
    for (int i = 0; i < 5; ++i) sets.push_back(random_set(rng, 1 + i % 4, -1.0 + 0.3 * uniform01(rng), 1.0));

    for (std::size_t i = 0; i < sets.size(); ++i) {
        const JacobiSpec mu{static_cast<int>(i % 3), static_cast<int>((i / 3) % 2), {-1.0, 1.0}};
        const std::string name = "gram vs stieltjes " + set_label(sets[i]);
        t.guard(name, [&] {
            const auto eq = equilibrium(sets[i]);
            const auto od = stieltjes(eq, mu, 8);
            const auto g = gram_oracle(eq, mu, 8);
            for (int k = 0; k <= 8; ++k) {
                t.rel(od.norms[static_cast<std::size_t>(k)], g[static_cast<std::size_t>(k)], 1e-8, label(name, k));
            }
        });
    }

    const WeightSpec weights[] = {WeightSpec::unit(), WeightSpec::sqrt_one_plus(), WeightSpec::sqrt_one_minus(),
                                  WeightSpec::sqrt_one_minus_sq()};
    for (std::size_t i = 0; i < 5; ++i) {
        const IntervalSet& set = sets[i];
        t.guard("remez vs LP " + set_label(set), [&] {
            const auto eq = equilibrium(set);
            for (const auto& w : weights) {
                for (int n = 1; n <= 4; ++n) {
                    const std::string what = label("remez vs LP " + set_label(set) + " " + w.name(), n);
                    const double tn = remez(eq, w, n).norm;
                    t.rel(brute_force_minimax(set, w, n, 20001).value, tn, 1e-6, what);
                }
            }
        });
    }

    t.guard("capacity closed forms", [&] {
        t.near(equilibrium(normalize({{-1.0, 1.0}})).capacity(), 0.5, 1e-9, "Cap[-1,1]");
        t.near(equilibrium(normalize({{0.0, 4.0}})).capacity(), 1.0, 1e-9, "Cap[0,4]");
        const auto two = equilibrium(normalize({{-1.0, -0.5}, {0.5, 1.0}}));
        t.near(two.capacity(), std::sqrt(0.75) / 2.0, 1e-9, "Cap two-band");
        t.near(log_capacity(two, 3.0), std::log(std::sqrt(0.75) / 2.0), 1e-9, "log Cap two-band, second anchor");
        for (const auto& entry : preimage_catalog()) {
            const auto eq = equilibrium(build_set(entry.spec).set);
            t.near(eq.capacity(), exact_invariants(entry.spec).capacity, 1e-9, "Cap " + entry.name);
        }
    });
}

double equality_bound(const WeightSpec& w, double normalised_cap) {
    return w.kind == WeightKind::SqrtOneMinusSq ? 2.0 * normalised_cap : 2.0 * std::sqrt(normalised_cap);
}

struct AffineValues {
    double w_inf, w2, entropy;
    bool eq_sup, eq_l2;
    Poly orthogonal, chebyshev;
};

AffineValues affine_values(const IntervalSet& set, const WeightSpec& w, const JacobiSpec& mu, Band ref, int n,
                           PreimageVariant variant) {
    const auto eq = equilibrium(set);
    const auto sol = remez(eq, w, n);
    const auto od = stieltjes(eq, mu, n);
    // capacity measured in the reference coordinate of [-1, 1]
    const double cap = eq.capacity() * 2.0 / ref.length();
    WeightSpec shape = variant == PreimageVariant::OneMinusSq ? WeightSpec::sqrt_one_minus_sq() : WeightSpec::sqrt_one_plus();
    AffineValues v{sol.widom_inf, std::sqrt(od.widom2_sq[static_cast<std::size_t>(n)]), od.entropy, false, false,
                   od.polynomial(n), sol.monomial()};
    v.eq_sup = std::abs(v.w_inf - equality_bound(shape, cap)) <= 1e-7;
    v.eq_l2 = std::abs(od.widom2_sq[static_cast<std::size_t>(n)] - 2.0 * v.entropy) <= 1e-7;
    return v;
}

void affine(Tally& t) {
    for (const auto& entry : preimage_catalog()) {
        const PreimageSpec& spec = entry.spec;
        const int n = spec.degree();
        t.guard(entry.name, [&] {
            const auto base = affine_instance(spec, {-1.0, 1.0});
            const auto ref = affine_values(base.set, base.weight, base.measure, base.target, n, spec.variant);
            for (Band target : {Band{0.0, 4.0}, Band{3.0, 7.0}}) {
                const auto inst = affine_instance(spec, target);
                const std::string what = entry.name + " on [" + std::to_string(static_cast<int>(target.lo)) + "," +
                                         std::to_string(static_cast<int>(target.hi)) + "]";
                const auto v = affine_values(inst.set, inst.weight, inst.measure, target, n, spec.variant);
                t.near(v.w_inf, ref.w_inf, 1e-9, what + " W_inf");
                t.near(v.w2, ref.w2, 1e-9, what + " W2");
                t.near(v.entropy, ref.entropy, 1e-9, what + " S");
                t.expect(v.eq_sup == ref.eq_sup && v.eq_l2 == ref.eq_l2 && v.eq_sup && v.eq_l2, what + " equality flags");
                t.expect(inst.orthogonal_exact.has_value(), what + " exact mapped polynomial");
                if (inst.orthogonal_exact) {
                    const Poly exact = to_double(*inst.orthogonal_exact);
                    t.poly(v.orthogonal, exact, 1e-9, what + " P_n(x; nu) vs exact");
                    t.poly(v.chebyshev, exact, 1e-9, what + " T_n,w on L vs exact");
                }
            }
        });
    }
    // a generic set and measure: invariance only
    std::mt19937_64 rng(0x5eed0009);
    const IntervalSet set = random_set(rng, 3, -1.0, 1.0);
    t.guard("random set " + set_label(set), [&] {
        const JacobiSpec mu{2, 1, {-1.0, 1.0}};
        const auto eq = equilibrium(set);
        const auto od = stieltjes(eq, mu, 6);
        const double w_ref = remez(eq, mu.weight(), 6).widom_inf;
        for (Band target : {Band{0.0, 4.0}, Band{3.0, 7.0}}) {
            const auto mapped = affine_map(set, {-1.0, 1.0}, target);
            const JacobiSpec nu{2, 1, target};
            const auto eqm = equilibrium(mapped);
            const auto om = stieltjes(eqm, nu, 6);
            t.near(om.entropy, od.entropy, 1e-9, "random set S");
            for (int k = 1; k <= 6; ++k) {
                t.near(std::sqrt(om.widom2_sq[static_cast<std::size_t>(k)]), std::sqrt(od.widom2_sq[static_cast<std::size_t>(k)]),
                       1e-9, label("random set W2", k));
            }
            t.near(remez(eqm, nu.weight(), 6).widom_inf, w_ref, 1e-9, "random set W_inf");
        }
    });
}

struct Criterion {
    const char* title;
    void (*run)(Tally&);
};

const Criterion kCriteria[kCriterionCount] = {
    {"closed forms on [-1,1]: four kinds, n = 1..20", closed_forms},
    {"L2 equalities on [-1,1], n = 1..12", l2_equalities},
    {"exact preimage identities for (1+x)(3x)^2", preimage_identities},
    {"bound sandwich and strictness, 25 random sets", bound_sandwich},
    {"improved and universal L2 lower bounds", improved_bound},
    {"saturation equivalence and negative controls", saturation},
    {"enclosure identity Cap(K_n)^(2n+1) = t_n^2/4", enclosure},
    {"oracle equivalences: Gram, LP, capacity", oracles},
    {"affine invariance on [0,4] and [3,7]", affine},
};

}  // namespace

CriterionResult run_criterion(int id) {
    if (id < 1 || id > kCriterionCount) throw DomainError("acceptance criterion out of range");
    const Criterion& c = kCriteria[id - 1];
    CriterionResult r;
    r.id = id;
    r.title = c.title;
    const auto start = std::chrono::steady_clock::now();
    Tally tally(r);
    tally.guard(c.title, [&] { c.run(tally); });
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.pass = r.failures == 0 && r.checks > 0;
    return r;
}

std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result) {
    std::vector<CriterionResult> out;
    for (int id = 1; id <= kCriterionCount; ++id) {
        out.push_back(run_criterion(id));
        if (on_result) on_result(out.back());
    }
    return out;
}

std::string format_result(const CriterionResult& r) {
    char head[64];
    std::snprintf(head, sizeof head, "%s [%d] ", r.pass ? "PASS" : "FAIL", r.id);
    std::ostringstream os;
    os << head << r.title << " (" << r.checks << " checks, " << r.failures << " failed)";
    if (!r.pass && !r.detail.empty()) os << ": " << r.detail;
    return os.str();
}

}  // namespace widom::verify

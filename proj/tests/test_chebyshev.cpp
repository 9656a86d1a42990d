#include "doctest.h"

#include <numbers>
#include <random>

#include "support.hpp"
#include "widomlab/chebyshev.hpp"
#include "widomlab/error.hpp"

using namespace widom;
using widom::testing::cubic_preimage_edges;
using widom::testing::uniform01;

namespace {

IntervalSet cubic_set() {
    auto e = cubic_preimage_edges();
    return normalize({{-1.0, e[0]}, {e[1], e[2]}});
}

const IntervalSet& two_band() {
    static const IntervalSet s = normalize({{-1.0, -0.5}, {0.5, 1.0}});
    return s;
}

void check_alternation(const ChebyshevSolution& sol, const IntervalSet& set) {
    REQUIRE(sol.alternation_points.size() == static_cast<std::size_t>(sol.degree + 1));
    for (std::size_t k = 0; k < sol.alternation_points.size(); ++k) {
        const double sign = ((sol.degree - static_cast<int>(k)) % 2 == 0) ? 1.0 : -1.0;
        CHECK(std::abs(sol.alternation_values[k] - sign * sol.norm) <= 1e-9 * sol.norm);
        CHECK(set.contains(sol.alternation_points[k]));
        if (k > 0) CHECK(sol.alternation_points[k - 1] < sol.alternation_points[k]);
    }
}

}  // namespace

TEST_CASE("unit weight on [-1,1] gives T_3 / 4") {
    const auto set = normalize({{-1.0, 1.0}});
    const auto sol = remez(set, WeightSpec::unit(), 3);
    const Poly p = sol.monomial();
    CHECK(std::abs(p[3] - 1.0) < 1e-15);
    CHECK(std::abs(p[2]) < 1e-12);
    CHECK(std::abs(p[1] + 0.75) < 1e-12);
    CHECK(std::abs(p[0]) < 1e-12);
    CHECK(std::abs(sol.norm - 0.25) < 1e-12);
    CHECK(std::abs(sol.widom_inf - 2.0) < 1e-10);
    check_alternation(sol, set);
}

TEST_CASE("sqrt(1+x) weight, degree 1 on [-1,1]") {
    const auto set = normalize({{-1.0, 1.0}});
    const auto sol = remez(set, WeightSpec::sqrt_one_plus(), 1);
    const Poly p = sol.monomial();
    CHECK(std::abs(p[0] + 0.5) < 1e-10);
    CHECK(std::abs(sol.norm - std::numbers::sqrt2 / 2) < 1e-12);
    CHECK(std::abs(sol.widom_inf - std::numbers::sqrt2) < 1e-10);
    check_alternation(sol, set);
    CHECK(std::abs(sol.alternation_points[0] + 0.5) < 1e-7);
    CHECK(sol.alternation_points[1] == 1.0);
}

TEST_CASE("cubic preimage set: p = x, t = 1/3") {
    const auto set = cubic_set();
    const auto eq = equilibrium(set);
    const auto sol = remez(eq, WeightSpec::sqrt_one_plus(), 1);
    const Poly p = sol.monomial();
    CHECK(std::abs(p[0]) < 1e-10);
    CHECK(std::abs(sol.norm - 1.0 / 3.0) < 1e-10);
    CHECK(std::abs(sol.widom_inf - 2.0 * std::sqrt(std::cbrt(1.0 / 36.0))) < 1e-9);
    check_alternation(sol, set);

    const auto kn = enclosing_preimage(set, WeightSpec::sqrt_one_plus(), sol);
    REQUIRE(kn.band_count() == 2);
    for (std::size_t j = 0; j < 2; ++j) {
        CHECK(std::abs(kn.bands()[j].lo - set.bands()[j].lo) < 1e-9);
        CHECK(std::abs(kn.bands()[j].hi - set.bands()[j].hi) < 1e-9);
    }
    const auto b = sup_bounds(eq, WeightSpec::sqrt_one_plus());
    CHECK(std::abs(sol.widom_inf - b.lower) < 1e-9);
}

TEST_CASE("kind polynomials") {
    auto u2 = kind_polynomial(ChebyshevKind::Second, 2);
    CHECK(u2.monic == Poly({-0.25, 0.0, 1.0}));
    auto v2 = kind_polynomial(ChebyshevKind::Third, 2);
    CHECK(v2.monic == Poly({-0.25, -0.5, 1.0}));
    auto t1 = kind_polynomial(ChebyshevKind::First, 1);
    CHECK(t1.monic == Poly({0.0, 1.0}));
    CHECK(t1.widom_inf == 2.0);

    const double expected[] = {2.0, 1.0, std::numbers::sqrt2, std::numbers::sqrt2};
    const auto full = normalize({{-1.0, 1.0}});
    for (int k = 0; k < 4; ++k) {
        const auto kind = static_cast<ChebyshevKind>(k);
        for (int n = 1; n <= 6; ++n) {
            const auto kp = kind_polynomial(kind, n);
            CHECK(std::abs(kp.widom_inf - expected[k]) < 1e-12);
            CHECK(std::abs(kp.monic.leading() - 1.0) < 1e-15);
            CHECK(std::abs(weighted_sup_norm(full, kp.weight, kp.monic) - kp.norm) < 1e-12);
            const auto sol = remez(full, kp.weight, n);
            const Poly diff = sol.monomial() - kp.monic;
            for (int i = 0; i <= diff.degree(); ++i) CHECK(std::abs(diff[i]) < 1e-10);
        }
    }
}

TEST_CASE("sup bounds") {
    {
        const auto b = sup_bounds(equilibrium(normalize({{-1.0, 1.0}})), WeightSpec::sqrt_one_plus());
        CHECK(std::abs(b.lower - std::numbers::sqrt2) < 1e-10);
        CHECK(std::abs(*b.upper - std::numbers::sqrt2) < 1e-10);
    }
    {
        const auto b = sup_bounds(equilibrium(normalize({{-1.0, 0.3}})), WeightSpec::sqrt_one_plus());
        CHECK(std::abs(b.lower - 2 * std::sqrt(1.3 / 4)) < 1e-10);
        CHECK(std::abs(*b.upper - b.lower) < 1e-10);
    }
    {
        const auto b = sup_bounds(equilibrium(two_band()), WeightSpec::sqrt_one_plus());
        const double lower = 2 * std::sqrt(std::sqrt(0.75) / 2);
        CHECK(std::abs(b.lower - lower) < 1e-10);
        CHECK(std::abs(*b.upper - lower * std::sqrt(3.0)) < 1e-9);
    }
    CHECK_THROWS_AS(sup_bounds(equilibrium(two_band()), WeightSpec::unit()), DomainError);
    CHECK_THROWS_AS(sup_bounds(equilibrium(normalize({{-1.0, 2.0}})), WeightSpec::sqrt_one_plus()), DomainError);
}

TEST_CASE("remez input errors") {
    CHECK_THROWS_AS(remez(two_band(), WeightSpec::unit(), 0), DomainError);
    CHECK_THROWS_AS(remez(two_band(), WeightSpec::unit(), 2, 0.0), DomainError);
    CHECK_THROWS_AS(remez(normalize({{-2.0, 1.0}}), WeightSpec::sqrt_one_plus(), 2), DomainError);
    RemezOptions opts;
    opts.max_iterations = 1;
    CHECK_THROWS_AS(remez(two_band(), WeightSpec::sqrt_one_plus(), 5, 1e-12, opts), NumericalError);
}

TEST_CASE("two-band set: enclosure and capacity identity") {
    const auto eq = equilibrium(two_band());
    const auto sol = remez(eq, WeightSpec::sqrt_one_plus(), 1);
    const auto kn = enclosing_preimage(two_band(), WeightSpec::sqrt_one_plus(), sol);
    CHECK(kn.bands().front().lo >= -1.0 - 1e-9);
    CHECK(kn.bands().back().hi <= 1.0 + 1e-9);
    CHECK(!(kn == two_band()));
    const double cap = equilibrium(kn).capacity();
    const double lhs = std::pow(cap, 3), rhs = sol.norm * sol.norm / 4;
    CHECK(std::abs(lhs - rhs) <= 1e-9 * rhs);
}

TEST_CASE("random sets: minimality, sandwich, strictness, reflection, enclosure") {
    std::mt19937_64 rng(20240607);
    for (int trial = 0; trial < 6; ++trial) {
        const int bands = 2 + trial % 3;
        const auto set = normalize(std::span<const std::pair<double, double>>(testing::random_bands(rng, bands, -1.0, 1.0)));
        const auto eq = equilibrium(set);
        for (int n : {1, 3, 6}) {
            CAPTURE(trial);
            CAPTURE(n);
            const auto w = WeightSpec::sqrt_one_plus();
            const auto sol = remez(eq, w, n);
            check_alternation(sol, set);

            const Poly p = sol.monomial();
            for (int k = 0; k < 200; ++k) {
                Poly q = p;
                std::vector<double> c(q.coeffs().begin(), q.coeffs().end());
                const double scale = 1e-3 * std::pow(10.0, -3.0 * uniform01(rng));
                for (int i = 0; i < n; ++i) c[static_cast<std::size_t>(i)] += scale * (2 * uniform01(rng) - 1);
                CHECK(weighted_sup_norm(set, w, Poly(c)) >= sol.norm - 1e-9);
            }

            const auto b = sup_bounds(eq, w);
            CHECK(sol.widom_inf >= b.lower - 1e-8);
            CHECK(sol.widom_inf <= *b.upper + 1e-8);
            CHECK(sol.widom_inf < *b.upper - 1e-6);

            const auto mirrored = remez(reflect(set), WeightSpec::sqrt_one_minus(), n);
            const Poly pm = mirrored.monomial();
            for (int i = 0; i <= n; ++i) {
                const double expect = ((n - i) % 2 == 0 ? 1.0 : -1.0) * p[i];
                CHECK(std::abs(pm[i] - expect) < 1e-10);
            }

            const auto kn = enclosing_preimage(set, w, sol);
            CHECK(kn.bands().front().lo >= -1.0 - 1e-9);
            CHECK(kn.bands().back().hi <= 1.0 + 1e-9);
            const double lhs = (2 * n + 1) * equilibrium(kn).log_capacity();
            const double rhs = std::log(sol.norm * sol.norm / 4);
            CHECK(std::abs(std::expm1(lhs - rhs)) <= 1e-8);
        }
    }
}

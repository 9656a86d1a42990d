#include "doctest.h"

#include <numbers>

#include "support.hpp"
#include "widomlab/error.hpp"
#include "widomlab/potential.hpp"

using namespace widom;
using widom::testing::cubic_preimage_edges;
using widom::testing::interval_green;

namespace {

const double kTwoBandCap = std::sqrt(1.0 - 0.25) / 2.0;  // {x : x^2 in [0.25, 1]}

IntervalSet cubic_set() {
    auto e = cubic_preimage_edges();
    return normalize({{-1.0, e[0]}, {e[1], e[2]}});
}

}  // namespace

TEST_CASE("single interval: arcsine measure") {
    auto eq = equilibrium(normalize({{-1.0, 1.0}}));
    CHECK(eq.gap_zeros().empty());
    CHECK(eq.band_masses()[0] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(eq.density(0.3) == doctest::Approx(1.0 / (std::numbers::pi * std::sqrt(1 - 0.09))).epsilon(1e-14));
    CHECK(std::abs(eq.log_capacity() - std::log(0.5)) < 1e-12);
    CHECK(green(eq, 0.3) == 0.0);
    CHECK(std::abs(green(eq, 2.0) - std::log(2.0 + std::sqrt(3.0))) < 1e-12);
    CHECK(std::abs(green(eq, -3.5) - interval_green(-1, 1, -3.5)) < 1e-12);

    CHECK(std::abs(integrate_dmu(eq, [](double) { return 1.0; }) - 1.0) < 1e-10);
    CHECK(std::abs(integrate_dmu(eq, [](double x) { return x * x; }) - 0.5) < 1e-12);
    CHECK(std::abs(integrate_dmu(eq, [](double x) { return 1 - x * x; }) - 0.5) < 1e-12);
}

TEST_CASE("general interval capacity is a quarter of its length") {
    auto eq = equilibrium(normalize({{0.0, 4.0}}));
    CHECK(std::abs(eq.log_capacity() - 0.0) < 1e-12);
    CHECK(std::abs(green(eq, 5.0) - interval_green(0, 4, 5.0)) < 1e-12);
}

TEST_CASE("symmetric two-band set") {
    auto eq = equilibrium(normalize({{-1.0, -0.5}, {0.5, 1.0}}));
    REQUIRE(eq.gap_zeros().size() == 1);
    CHECK(std::abs(eq.gap_zeros()[0]) < 1e-13);
    CHECK(std::abs(eq.band_masses()[0] - 0.5) < 1e-12);
    CHECK(std::abs(eq.band_masses()[1] - 0.5) < 1e-12);
    CHECK(std::abs(eq.log_capacity() - std::log(kTwoBandCap)) < 1e-10);
    CHECK(std::abs(log_capacity(eq, 3.0) - std::log(kTwoBandCap)) < 1e-10);
    CHECK(std::abs(green(eq, 0.0) - 0.5 * std::log(3.0)) < 1e-10);
    // x^2 reduction holds off the set as well
    CHECK(std::abs(green(eq, 1.7) - 0.5 * interval_green(0.25, 1.0, 1.7 * 1.7)) < 1e-10);
    CHECK(std::abs(green(eq, 0.2) - 0.5 * interval_green(0.25, 1.0, 0.04)) < 1e-10);

    auto pw = pw_data(eq);
    REQUIRE(pw.critical_values.size() == 1);
    CHECK(std::abs(pw.sum - 0.5 * std::log(3.0)) < 1e-10);

    auto odd = integrate_dmu(eq, [](double x) { return x * x * x; });
    CHECK(std::abs(odd) < 1e-13);
}

TEST_CASE("cubic preimage set: masses 1/3, 2/3 and exact capacity") {
    auto eq = equilibrium(cubic_set());
    CHECK(std::abs(eq.band_masses()[0] - 1.0 / 3.0) < 1e-10);
    CHECK(std::abs(eq.band_masses()[1] - 2.0 / 3.0) < 1e-10);
    CHECK(std::abs(eq.log_capacity() + std::log(36.0) / 3.0) < 1e-10);
    // the double zero of (1+x) 9 x^2 at 0 splits the second band into two branches
    CHECK(std::abs(eq.measure_of(eq.set().bands()[1].lo, 0.0) - 1.0 / 3.0) < 1e-10);
    auto pw = pw_data(eq);
    REQUIRE(pw.critical_values.size() == 1);
    CHECK(pw.sum > 0.0);
    // critical value of Q at -2/3 is 4/3 and g = log(T + sqrt(T^2-1))/3 with T = 2Q - 1
    const double t = 2.0 * 4.0 / 3.0 - 1.0;
    CHECK(std::abs(eq.gap_zeros()[0] + 2.0 / 3.0) < 1e-9);
    CHECK(std::abs(pw.sum - std::log(t + std::sqrt(t * t - 1)) / 3.0) < 1e-10);
}

TEST_CASE("anchor must lie outside the hull") {
    auto eq = equilibrium(normalize({{-1.0, 1.0}}));
    CHECK_THROWS_AS(log_capacity(eq, 0.2), DomainError);
    CHECK_THROWS_AS(equilibrium(normalize({{-1.0, 1.0}}), 4), DomainError);
}

TEST_CASE("properties on random sets") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const int nb = 1 + trial % 5;
        const double lo = -1.0 - widom::testing::uniform01(rng);
        const double hi = 1.0 + widom::testing::uniform01(rng);
        const IntervalSet set = normalize(widom::testing::random_bands(rng, nb, lo, hi));
        const auto eq = equilibrium(set);
        CAPTURE(trial);

        double total = 0;
        for (double m : eq.band_masses()) total += m;
        CHECK(std::abs(total - 1.0) < 1e-10);

        const Band hull = set.hull();
        CHECK(eq.log_capacity() <= std::log(hull.length() / 4.0) + 1e-12);
        CHECK(std::abs(log_capacity(eq, hull.hi + 2.0) - eq.log_capacity()) < 1e-9);
        CHECK(std::abs(log_capacity(eq, hull.lo - 1.5) - eq.log_capacity()) < 1e-9);

        // Frostman: potential is constant on K
        for (const Band& b : set.bands()) {
            for (double s : {0.0, 0.13, 0.5, 0.91, 1.0}) {
                const double x = std::min(b.lo + s * b.length(), b.hi);
                CHECK(std::abs(log_potential(eq, x) - eq.log_capacity()) < 1e-8);
            }
        }

        // green: nonnegative, monotone outside the hull, maximal at the gap zero
        double prev = 0.0;
        for (int i = 1; i <= 10; ++i) {
            const double g = green(eq, hull.hi + 0.1 * i);
            CHECK(g > prev);
            prev = g;
        }
        prev = 0.0;
        for (int i = 1; i <= 10; ++i) {
            const double g = green(eq, hull.lo - 0.1 * i);
            CHECK(g > prev);
            prev = g;
        }
        const auto gs = gaps(set);
        for (std::size_t k = 0; k < gs.size(); ++k) {
            const double z = eq.gap_zeros()[k];
            CHECK(gs[k].left < z);
            CHECK(z < gs[k].right);
            const double gz = green(eq, z);
            for (int i = 1; i < 20; ++i) {
                const double x = gs[k].left + (gs[k].right - gs[k].left) * i / 20.0;
                const double gx = green(eq, x);
                CHECK(gx >= 0.0);
                CHECK(gx <= gz + 1e-12);
            }
        }

        // monotonicity: dropping a band shrinks capacity
        if (set.band_count() > 1) {
            std::vector<Band> fewer(set.bands().begin() + 1, set.bands().end());
            const auto eq2 = equilibrium(normalize(std::span<const Band>(fewer)));
            CHECK(eq2.log_capacity() <= eq.log_capacity() + 1e-10);
        }

        // reflection symmetry
        const auto eqr = equilibrium(reflect(set));
        CHECK(std::abs(eqr.log_capacity() - eq.log_capacity()) < 1e-10);
        for (std::size_t k = 0; k < eq.gap_zeros().size(); ++k) {
            CHECK(std::abs(eqr.gap_zeros()[eq.gap_zeros().size() - 1 - k] + eq.gap_zeros()[k]) < 1e-10);
        }
    }
}

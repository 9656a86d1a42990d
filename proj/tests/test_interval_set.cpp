#include "doctest.h"

#include <random>

#include "widomlab/error.hpp"
#include "widomlab/interval_set.hpp"

using namespace widom;

TEST_CASE("normalize sorts, orients and merges") {
    auto s = normalize({{0.2, 0.5}, {-1.0, 0.1}});
    REQUIRE(s.band_count() == 2);
    CHECK(s.bands()[0] == Band{-1.0, 0.1});
    CHECK(s.bands()[1] == Band{0.2, 0.5});
    CHECK(s.hull() == Band{-1.0, 0.5});

    auto touching = normalize({{-1.0, 0.0}, {0.0, 1.0}});
    REQUIRE(touching.band_count() == 1);
    CHECK(touching.bands()[0] == Band{-1.0, 1.0});

    auto close = normalize({{-1.0, -0.3}, {-0.3 + 1e-15, 1.0}}, 1e-12);
    REQUIRE(close.band_count() == 1);
    CHECK(close.bands()[0] == Band{-1.0, 1.0});

    auto reversed = normalize({{0.5, -0.5}});
    CHECK(reversed.bands()[0] == Band{-0.5, 0.5});
}

TEST_CASE("normalize rejects empty and degenerate input") {
    std::vector<std::pair<double, double>> none;
    CHECK_THROWS_AS(normalize(none), DomainError);
    CHECK_THROWS_AS(normalize({{0.3, 0.3}}), DomainError);
}

TEST_CASE("gaps between consecutive bands") {
    CHECK(gaps(normalize({{-1.0, 1.0}})).empty());
    auto g = gaps(normalize({{-1.0, -0.5}, {0.5, 1.0}}));
    REQUIRE(g.size() == 1);
    CHECK(g[0].left == -0.5);
    CHECK(g[0].right == 0.5);
    CHECK(g[0].index == 0);

    auto g3 = gaps(normalize({{-1.0, -0.846}, {-0.451, 0.293}}));
    REQUIRE(g3.size() == 1);
    CHECK(g3[0].left == -0.846);
    CHECK(g3[0].right == -0.451);
}

TEST_CASE("affine_map") {
    auto s = affine_map(normalize({{-1.0, 1.0}}), {-1.0, 1.0}, {0.0, 4.0});
    CHECK(s.bands()[0] == Band{0.0, 4.0});

    auto two = affine_map(normalize({{-1.0, 0.0}, {0.5, 1.0}}), {-1.0, 1.0}, {3.0, 7.0});
    REQUIRE(two.band_count() == 2);
    CHECK(two.bands()[0].lo == doctest::Approx(3.0).epsilon(1e-15));
    CHECK(two.bands()[0].hi == doctest::Approx(5.0).epsilon(1e-15));
    CHECK(two.bands()[1].lo == doctest::Approx(6.0).epsilon(1e-15));
    CHECK(two.bands()[1].hi == doctest::Approx(7.0).epsilon(1e-15));

    CHECK_THROWS_AS(affine_map(two, {1.0, 1.0}, {0.0, 1.0}), DomainError);
}

TEST_CASE("random sets: idempotence, round trip, ratio preservation, membership") {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::pair<double, double>> raw;
        const int k = 1 + trial % 6;
        for (int i = 0; i < k; ++i) {
            double a = u(rng), b = u(rng);
            if (a == b) b += 0.1;
            raw.emplace_back(a, b);
        }
        const IntervalSet s = normalize(raw);
        CHECK(normalize(s.bands()) == s);
        for (std::size_t j = 0; j + 1 < s.band_count(); ++j) CHECK(s.bands()[j].hi < s.bands()[j + 1].lo);

        const Band src = s.hull(), dst{u(rng), u(rng) + 10.0};
        const IntervalSet mapped = affine_map(s, src, dst);
        REQUIRE(mapped.band_count() == s.band_count());
        CHECK(gaps(mapped).size() == gaps(s).size());
        const IntervalSet back = affine_map(mapped, dst, src);
        for (std::size_t j = 0; j < s.band_count(); ++j) {
            CHECK(std::abs(back.bands()[j].lo - s.bands()[j].lo) < 1e-14 * 10);
            CHECK(std::abs(back.bands()[j].hi - s.bands()[j].hi) < 1e-14 * 10);
            const double r0 = s.bands()[j].length() / s.bands()[0].length();
            const double r1 = mapped.bands()[j].length() / mapped.bands()[0].length();
            CHECK(std::abs(r0 - r1) < 1e-12 * std::max(1.0, r0));
        }

        for (int i = 0; i < 50; ++i) {
            const double x = u(rng);
            int hits = 0;
            for (const Band& b : s.bands()) hits += b.contains(x) ? 1 : 0;
            CHECK(hits <= 1);
            CHECK(s.contains(x) == (hits == 1));
        }
    }
}

TEST_CASE("reflect") {
    auto r = reflect(normalize({{-1.0, -0.5}, {0.2, 0.9}}));
    CHECK(r.bands()[0] == Band{-0.9, -0.2});
    CHECK(r.bands()[1] == Band{0.5, 1.0});
}

#include "doctest.h"

#include <numbers>
#include <random>

#include "support.hpp"
#include "widomlab/error.hpp"
#include "widomlab/orthopoly.hpp"

using namespace widom;
using widom::testing::cubic_preimage_edges;
using widom::testing::uniform01;

namespace {

IntervalSet cubic_set() {
    auto e = cubic_preimage_edges();
    return normalize({{-1.0, e[0]}, {e[1], e[2]}});
}

IntervalSet random_set(std::mt19937_64& rng, int bands, double lo, double hi) {
    return normalize(std::span<const std::pair<double, double>>(testing::random_bands(rng, bands, lo, hi)));
}

// int P_j P_k d mu on an independent, finer rule.
double inner(const EquilibriumData& eq, const JacobiSpec& mu, const Poly& p, const Poly& q) {
    const auto r = eq.discrete_measure(4 * eq.points_per_band() + 97);
    double s = 0.0;
    for (Eigen::Index i = 0; i < r.nodes.size(); ++i) s += r.weights(i) * mu(r.nodes(i)) * p(r.nodes(i)) * q(r.nodes(i));
    return s;
}

}  // namespace

TEST_CASE("arcsine measure: W2^2 = 2") {
    const auto eq = equilibrium(normalize({{-1.0, 1.0}}));
    const auto od = stieltjes(eq, {}, 3);
    CHECK(od.entropy == 1.0);
    for (int k = 1; k <= 3; ++k) CHECK(std::abs(od.widom2_sq[static_cast<std::size_t>(k)] - 2.0) < 1e-12);
    CHECK(std::abs(od.norms[1] - 0.5) < 1e-14);
}

TEST_CASE("second kind measure on [-1,1]") {
    const auto eq = equilibrium(normalize({{-1.0, 1.0}}));
    const JacobiSpec mu{1, 1, {-1.0, 1.0}};
    CHECK(std::abs(entropy(eq, mu) - 0.25) < 1e-12);
    const auto od = stieltjes(eq, mu, 2);
    for (int k = 0; k <= 2; ++k) {
        CHECK(std::abs(od.norms[static_cast<std::size_t>(k)] - std::ldexp(1.0, -2 * k - 1)) < 1e-14);
    }
    CHECK(std::abs(od.widom2_sq[2] - 0.5) < 1e-12);
    const Poly p2 = od.polynomial(2) - Poly({-0.25, 0.0, 1.0});
    for (int i = 0; i <= p2.degree(); ++i) CHECK(std::abs(p2[i]) < 1e-14);
}

TEST_CASE("third kind: gram oracle and norms") {
    const auto eq = equilibrium(normalize({{-1.0, 1.0}}));
    const JacobiSpec mu{0, 1, {-1.0, 1.0}};
    const auto g = gram_oracle(eq, mu, 6);
    CHECK(std::abs(g[0] - 1.0) < 1e-14);
    for (int k = 1; k <= 6; ++k) CHECK(std::abs(g[static_cast<std::size_t>(k)] / std::ldexp(1.0, -2 * k) - 1) < 1e-10);
}

TEST_CASE("cubic preimage set") {
    const auto eq = equilibrium(cubic_set());
    const JacobiSpec mu{0, 1, {-1.0, 1.0}};
    const double cap = std::cbrt(1.0 / 36.0);
    CHECK(std::abs(entropy(eq, mu) - cap) < 1e-10);
    const auto od = stieltjes(eq, mu, 1);
    CHECK(std::abs(od.a[0]) < 1e-12);
    CHECK(std::abs(od.norms[1] - 1.0 / 18.0) < 1e-12);
    CHECK(std::abs(od.widom2_sq[1] - 2 * cap) < 1e-10);
}

TEST_CASE("trivial entropy and input errors") {
    const auto eq = equilibrium(normalize({{-0.3, 0.2}, {0.5, 0.9}}));
    CHECK(entropy(eq, {}) == 1.0);
    CHECK_THROWS_AS(stieltjes(eq, {}, 0), DomainError);
    CHECK_THROWS_AS(gram_oracle(eq, {}, 13), DomainError);
    CHECK_THROWS_AS(entropy(equilibrium(normalize({{-2.0, 1.0}})), JacobiSpec{1, 0, {-1.0, 1.0}}), DomainError);
}

TEST_CASE("symmetric two-band set: odd moments vanish") {
    const auto eq = equilibrium(normalize({{-1.0, -0.5}, {0.5, 1.0}}));
    const auto od = stieltjes(eq, {}, 6);
    for (double a : od.a) CHECK(std::abs(a) < 1e-12);
    const auto g = gram_oracle(eq, {}, 6);
    for (int k = 0; k <= 6; ++k) {
        CHECK(std::abs(g[static_cast<std::size_t>(k)] / od.norms[static_cast<std::size_t>(k)] - 1) < 1e-8);
    }
}

TEST_CASE("random sets: orthogonality, bounds, oracle, reflection") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 8; ++trial) {
        CAPTURE(trial);
        const bool ends = trial % 2 == 0;
        const double lo = ends ? -1.0 : -1.0 + 0.3 * uniform01(rng);
        const double hi = ends ? 1.0 : 1.0 - 0.3 * uniform01(rng);
        const auto set = random_set(rng, 1 + trial % 4, lo, hi);
        const auto eq = equilibrium(set);
        const JacobiSpec mu{trial % 4, (trial / 2) % 3, {-1.0, 1.0}};
        const int n = 8;
        const auto od = stieltjes(eq, mu, n);

        const double s = od.entropy;
        CHECK(std::abs(entropy_quadrature(eq, mu) / s - 1) < 1e-7);
        for (int k = 1; k <= n; ++k) {
            const double w2 = od.widom2_sq[static_cast<std::size_t>(k)];
            CHECK(w2 >= s - 1e-9);
            if (ends && mu.alpha + mu.beta >= 1) CHECK(w2 >= 2 * s - 1e-9);
            if (k < n) CHECK(std::abs(od.norms[static_cast<std::size_t>(k)] / od.norms[static_cast<std::size_t>(k - 1)] -
                           od.b[static_cast<std::size_t>(k)]) <=
                  1e-10 * od.b[static_cast<std::size_t>(k)]);
        }
        for (int j = 0; j <= n; ++j) {
            for (int k = 0; k < j; ++k) {
                const double ip = inner(eq, mu, od.polynomial(j), od.polynomial(k));
                CHECK(std::abs(ip) <= 1e-9 * std::sqrt(od.norms[static_cast<std::size_t>(j)] * od.norms[static_cast<std::size_t>(k)]));
            }
        }

        const auto g = gram_oracle(eq, mu, n);
        for (int k = 0; k <= n; ++k) CHECK(std::abs(g[static_cast<std::size_t>(k)] / od.norms[static_cast<std::size_t>(k)] - 1) < 1e-8);

        const auto mirrored = stieltjes(equilibrium(reflect(set)), JacobiSpec{mu.beta, mu.alpha, {-1.0, 1.0}}, n);
        for (int k = 0; k <= n; ++k) {
            CHECK(std::abs(mirrored.norms[static_cast<std::size_t>(k)] / od.norms[static_cast<std::size_t>(k)] - 1) < 1e-9);
        }
        for (int k = 0; k < n; ++k) CHECK(std::abs(mirrored.a[static_cast<std::size_t>(k)] + od.a[static_cast<std::size_t>(k)]) < 1e-9);
        CHECK(std::abs(mirrored.entropy / od.entropy - 1) < 1e-9);
    }
}

TEST_CASE("affine invariance of W2 and entropy") {
    std::mt19937_64 rng(5);
    const auto set = random_set(rng, 3, -1.0, 1.0);
    const auto eq = equilibrium(set);
    const JacobiSpec mu{1, 2, {-1.0, 1.0}};
    const auto od = stieltjes(eq, mu, 6);
    for (Band target : {Band{0.0, 4.0}, Band{3.0, 7.0}}) {
        const auto mapped = affine_map(set, {-1.0, 1.0}, target);
        const auto eqm = equilibrium(mapped);
        const auto om = stieltjes(eqm, JacobiSpec{1, 2, target}, 6);
        CHECK(std::abs(om.entropy - od.entropy) < 1e-9);
        for (int k = 0; k <= 6; ++k) {
            CHECK(std::abs(om.widom2_sq[static_cast<std::size_t>(k)] - od.widom2_sq[static_cast<std::size_t>(k)]) < 1e-9);
        }
    }
}

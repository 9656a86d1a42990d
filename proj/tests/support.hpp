#pragma once

// Test-only oracles and generators. Nothing here calls into the library's
// numerical routines.

#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <utility>
#include <vector>

namespace widom::testing {

/// Bisection root of f on [lo, hi] (f(lo), f(hi) of opposite sign).
inline double bisect(const std::function<double(double)>& f, double lo, double hi) {
    double flo = f(lo);
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        const double fm = f(mid);
        if ((fm > 0) == (flo > 0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

/// Roots of 9x^3 + 9x^2 - 1, the band edges of {x : (1+x)(3x)^2 in [0,1]}.
inline std::vector<double> cubic_preimage_edges() {
    auto f = [](double x) { return 9 * x * x * x + 9 * x * x - 1; };
    return {bisect(f, -1.0, -2.0 / 3.0), bisect(f, -2.0 / 3.0, 0.0), bisect(f, 0.0, 1.0)};
}

/// Closed-form Green function of a single interval [a, b].
inline double interval_green(double a, double b, double x) {
    const double u = std::abs((2 * x - a - b) / (b - a));
    return u <= 1 ? 0.0 : std::log(u + std::sqrt(u * u - 1));
}

/// Portable uniform double in [0, 1) from a 64-bit engine.
inline double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Random union of `bands` intervals covering exactly [lo, hi] at its ends.
/// Band and gap widths are drawn from min_width + U(0,1) and rescaled to fit.
inline std::vector<std::pair<double, double>> random_bands(std::mt19937_64& rng, int bands, double lo, double hi,
                                                           double min_width = 0.05) {
    const int pieces = 2 * bands - 1;
    std::vector<double> w(static_cast<std::size_t>(pieces));
    double total = 0;
    for (auto& v : w) total += v = min_width + uniform01(rng);
    const double scale = (hi - lo) / total;
    std::vector<std::pair<double, double>> out;
    double x = lo;
    for (int i = 0; i < pieces; ++i) {
        const double next = x + w[static_cast<std::size_t>(i)] * scale;
        if (i % 2 == 0) out.emplace_back(x, next);
        x = next;
    }
    out.back().second = hi;
    return out;
}

}  // namespace widom::testing

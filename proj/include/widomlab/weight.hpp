#pragma once

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "widomlab/interval_set.hpp"
#include "widomlab/polynomial.hpp"

namespace widom {

enum class WeightKind { Unit, SqrtOnePlus, SqrtOneMinus, SqrtOneMinusSq, JacobiRoot };

/// w(x) for the supported weights. JacobiRoot is
/// sqrt((1 - T(x))^alpha (1 + T(x))^beta) with T the increasing affine map of
/// `reference` onto [-1, 1].
struct WeightSpec {
    WeightKind kind = WeightKind::Unit;
    int alpha = 0;
    int beta = 0;
    Band reference{-1.0, 1.0};

    static WeightSpec unit() { return {}; }
    static WeightSpec sqrt_one_plus() { return {WeightKind::SqrtOnePlus}; }
    static WeightSpec sqrt_one_minus() { return {WeightKind::SqrtOneMinus}; }
    static WeightSpec sqrt_one_minus_sq() { return {WeightKind::SqrtOneMinusSq}; }
    static WeightSpec jacobi_root(int alpha, int beta, Band reference);

    /// Exponents (alpha, beta) with w^2 = (1 - T)^alpha (1 + T)^beta.
    std::pair<int, int> exponents() const;

    /// Reference interval whose affine image is [-1, 1].
    Band domain() const { return kind == WeightKind::JacobiRoot ? reference : Band{-1.0, 1.0}; }

    /// w^2 as a polynomial in x.
    Poly squared() const;

    double operator()(double x) const {
        if (kind == WeightKind::Unit) return 1.0;
        const Band d = domain();
        const double t = (2.0 * x - d.lo - d.hi) / (d.hi - d.lo);
        auto [a, b] = exponents();
        double v = std::pow(std::max(0.0, 1.0 - t), a) * std::pow(std::max(0.0, 1.0 + t), b);
        return std::sqrt(v);
    }

    std::string name() const;
};

/// Throws DomainError unless the set lies in the weight's natural domain
/// (within 1e-12) and the weight is well formed.
void check_weight_domain(const IntervalSet& set, const WeightSpec& w);

}  // namespace widom

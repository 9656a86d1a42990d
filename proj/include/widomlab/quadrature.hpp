#pragma once

#include <cmath>
#include <functional>

#include <Eigen/Dense>

namespace widom {

struct QuadratureRule {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;

    Eigen::Index size() const { return nodes.size(); }

    template <typename F>
    double integrate(F&& f) const {
        double acc = 0.0;
        for (Eigen::Index i = 0; i < nodes.size(); ++i) acc += weights(i) * f(nodes(i));
        return acc;
    }
};

/// n-point Gauss-Legendre rule on [-1, 1]. Rules are cached per n.
const QuadratureRule& gauss_legendre(int n);

/// Gauss-Legendre rule mapped onto [a, b].
QuadratureRule gauss_legendre(int n, double a, double b);

/// Globally adaptive Gauss-Legendre integration (20-point panels, bisection
/// until panel and half-panel estimates agree to abs_tol + rel_tol * |I|).
/// Integrable endpoint singularities are fine; interior ones should be split
/// off by the caller.
double integrate_adaptive(const std::function<double(double)>& f, double a, double b,
                          double abs_tol = 1e-15, double rel_tol = 1e-14);

}  // namespace widom

#pragma once

#include <Eigen/Dense>

#include "widomlab/interval_set.hpp"
#include "widomlab/weight.hpp"

namespace widom::verify {

struct LpResult {
    /// min over monic p of max_i |w(x_i) p(x_i)| on the grid.
    double value = 0.0;
    /// Coefficients in the Chebyshev basis of the hull, as in ChebyshevSolution.
    Eigen::VectorXd coeffs;
    int iterations = 0;
    double gap = 0.0;
};

/// Discrete minimax over `grid_points` points spread over the bands in
/// proportion to their length, solved as a linear program with a
/// primal-dual interior point method. Independent of the Remez code path.
LpResult brute_force_minimax(const IntervalSet& set, const WeightSpec& weight, int n, int grid_points = 20001);

}  // namespace widom::verify

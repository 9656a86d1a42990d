#pragma once

#include <vector>

#include "widomlab/interval_set.hpp"
#include "widomlab/polynomial.hpp"
#include "widomlab/potential.hpp"
#include "widomlab/weight.hpp"

namespace widom {

/// d mu = (1 - T)^alpha (1 + T)^beta d mu_K, T the increasing affine map of
/// `reference` onto [-1, 1].
struct JacobiSpec {
    int alpha = 0;
    int beta = 0;
    Band reference{-1.0, 1.0};

    /// Density of mu with respect to mu_K.
    double operator()(double x) const;
    /// The weight w with w^2 equal to the density.
    WeightSpec weight() const;
    static JacobiSpec from_weight(const WeightSpec& w);
};

struct OrthoData {
    /// P_{k+1} = (x - a[k]) P_k - b[k] P_{k-1}; b[0] is unused and set to N_0.
    std::vector<double> a;
    std::vector<double> b;
    /// N_k = ||P_k||^2, k = 0..n.
    std::vector<double> norms;
    /// N_k / Cap^(2k).
    std::vector<double> widom2_sq;
    double entropy = 0.0;
    double capacity = 0.0;
    int points_per_band = 0;

    /// Monic P_k from the recurrence, k <= n.
    Poly polynomial(int k) const;
};

/// Discretised Stieltjes procedure up to degree n >= 1.
OrthoData stieltjes(const EquilibriumData& eq, const JacobiSpec& mu, int n);

/// S(mu) = exp(int log f d mu_K) with f the density above. Evaluated through
/// Green values at the reference endpoints and cross-checked against direct
/// adaptive quadrature; a disagreement above 1e-6 throws NumericalError.
double entropy(const EquilibriumData& eq, const JacobiSpec& mu);

/// The same quantity by direct quadrature only.
double entropy_quadrature(const EquilibriumData& eq, const JacobiSpec& mu);

/// N_0..N_n from Hankel moment determinants (n <= 12).
std::vector<double> gram_oracle(const EquilibriumData& eq, const JacobiSpec& mu, int n);

}  // namespace widom

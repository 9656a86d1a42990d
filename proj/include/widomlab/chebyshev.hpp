#pragma once

#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "widomlab/interval_set.hpp"
#include "widomlab/polynomial.hpp"
#include "widomlab/potential.hpp"
#include "widomlab/weight.hpp"

namespace widom {

/// Monic weighted minimax polynomial on a set.
///
/// The polynomial is stored in the Chebyshev basis of the hull:
///     p(x) = half^n * sum_k coeffs[k] T_k(u),   u = (x - mid) / half,
/// with coeffs[n] = 2^(1-n), which makes p monic in x.
struct ChebyshevSolution {
    int degree = 0;
    Band hull{-1.0, 1.0};
    Eigen::VectorXd coeffs;
    /// Certified alternation set x_0 < ... < x_n and w(x_k) p(x_k) there.
    std::vector<double> alternation_points;
    std::vector<double> alternation_values;
    /// ||w p||_K measured on the validation grid.
    double norm = 0.0;
    /// |E| from the final reference solve.
    double level = 0.0;
    double capacity = 0.0;
    /// norm / Cap^n.
    double widom_inf = 0.0;
    /// (norm - level) / level.
    double max_deviation = 0.0;
    int iterations = 0;

    double operator()(double x) const;
    /// Monomial coefficients in x.
    Poly monomial() const;
};

struct RemezOptions {
    int grid_per_band = 4096;
    int validation_factor = 8;
    int max_iterations = 100;
    double validation_tol = 1e-8;
};

/// Remez exchange for min ||w p||_K over monic p of degree n >= 1.
/// Throws DomainError for bad input and NumericalError when the exchange does
/// not converge or the reference degenerates.
ChebyshevSolution remez(const EquilibriumData& eq, const WeightSpec& weight, int n, double tol = 1e-12,
                        const RemezOptions& opts = {});
ChebyshevSolution remez(const IntervalSet& set, const WeightSpec& weight, int n, double tol = 1e-12,
                        const RemezOptions& opts = {});

/// sup_K |w p| estimated on a uniform-in-theta grid of `points` per band with
/// local refinement.
double weighted_sup_norm(const IntervalSet& set, const WeightSpec& weight, const Poly& p, int points = 4096);

struct SupBounds {
    double lower = 0.0;
    std::optional<double> upper;
};

/// Lower bound 2 sqrt(Cap) and upper bound 2 sqrt(Cap) exp(g(-+1)/2 + PW) for
/// the sqrt(1 + x) and sqrt(1 - x) weights on subsets of [-1, 1].
SupBounds sup_bounds(const EquilibriumData& eq, const WeightSpec& weight);

enum class ChebyshevKind { First, Second, Third, Fourth };

struct KindPolynomial {
    ChebyshevKind kind;
    int degree;
    Poly monic;
    /// Weight for which `monic` is the Chebyshev polynomial of [-1, 1].
    WeightSpec weight;
    /// ||w monic||_{[-1,1]}.
    double norm;
    /// norm / (1/2)^n.
    double widom_inf;
};

/// Monic T_n / 2^(n-1), U_n / 2^n, V_n / 2^n, W_n / 2^n from the three-term
/// recurrences, with their exact weighted sup norms on [-1, 1].
KindPolynomial kind_polynomial(ChebyshevKind kind, int n);

/// K_n = {x : 0 <= (1 +- x) p(x)^2 <= t_n^2} for the sqrt(1 +- x) weights.
/// Checks K inside K_n (1e-9 slack) and that the preimage has 2n + 1 branches.
IntervalSet enclosing_preimage(const IntervalSet& set, const WeightSpec& weight, const ChebyshevSolution& sol);

}  // namespace widom

#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "widomlab/interval_set.hpp"
#include "widomlab/quadrature.hpp"

namespace widom {

/// Equilibrium measure of a finite union of intervals.
///
/// On the bands mu_K has density
///     rho(x) = |prod_k (x - z_k)| / (pi * sqrt(prod_j |x - a_j| |x - b_j|)),
/// with one zero z_k in every gap. The zeros are the critical points of the
/// Green function. Band quadrature uses x = mid - half * cos(theta), which
/// cancels the inverse square roots at the band's own endpoints.
class EquilibriumData {
public:
    const IntervalSet& set() const { return set_; }
    const std::vector<double>& gap_zeros() const { return zeros_; }
    double log_capacity() const { return log_cap_; }
    double capacity() const { return std::exp(log_cap_); }
    const std::vector<QuadratureRule>& band_rules() const { return rules_; }
    const std::vector<double>& band_masses() const { return masses_; }
    int points_per_band() const { return points_; }

    /// prod_k (x - z_k).
    double numerator(double x) const;
    /// Density of mu_K with respect to dx; zero off the set.
    double density(double x) const;
    /// Density of mu_K on band j with respect to theta in [0, pi].
    double band_theta_density(int band, double theta) const;
    /// Point of band j at parameter theta.
    double band_point(int band, double theta) const;

    /// Band rules with `points` Gauss-Legendre nodes in theta per band
    /// (nodes in x, weights are mu_K masses).
    std::vector<QuadratureRule> make_band_rules(int points) const;

    /// Concatenated nodes and weights of make_band_rules(max(points, points_per_band())).
    QuadratureRule discrete_measure(int points) const;

    /// mu_K([lo, hi]).
    double measure_of(double lo, double hi) const;

private:
    friend EquilibriumData equilibrium(const IntervalSet&, int, double);

    double other_endpoints_sqrt(double x, double skip_lo, double skip_hi) const;

    IntervalSet set_;
    std::vector<double> zeros_;
    double log_cap_ = 0.0;
    std::vector<QuadratureRule> rules_;
    std::vector<double> masses_;
    int points_ = 0;
};

/// Solves the gap conditions for the density numerator, builds band rules
/// (doubling from quad_points_per_band until the total mass is within mass_tol
/// of 1, at most 1024 points) and evaluates the capacity.
EquilibriumData equilibrium(const IntervalSet& set, int quad_points_per_band = 64, double mass_tol = 1e-10);

/// Logarithmic potential  int log|x - t| dmu_K(t).
double log_potential(const EquilibriumData& eq, double x);

/// Green function of the complement with pole at infinity, on the real line.
double green(const EquilibriumData& eq, double x);

/// log Cap(K) = int log|z0 - t| dmu_K(t) - g_K(z0) for an anchor z0 outside the hull.
double log_capacity(const EquilibriumData& eq, double anchor);

struct PwData {
    std::vector<double> critical_values;
    double sum = 0.0;
};

/// Green values at the gap critical points and their sum PW(K).
PwData pw_data(const EquilibriumData& eq);

/// int f dmu_K via the band rules.
double integrate_dmu(const EquilibriumData& eq, const std::function<double(double)>& f);

}  // namespace widom

#include "widomlab/potential.hpp"

#include <algorithm>
#include <numbers>
#include <sstream>

#include "widomlab/error.hpp"
#include "widomlab/polynomial.hpp"

namespace widom {

namespace {

constexpr double kPi = std::numbers::pi;

double theta_of(const Band& b, double x) {
    double c = (b.mid() - x) / b.half();
    return std::acos(std::clamp(c, -1.0, 1.0));
}

}  // namespace

double EquilibriumData::numerator(double x) const {
    double p = 1.0;
    for (double z : zeros_) p *= x - z;
    return p;
}

double EquilibriumData::other_endpoints_sqrt(double x, double skip_lo, double skip_hi) const {
    double prod = 1.0;
    for (const Band& b : set_.bands()) {
        if (b.lo != skip_lo) prod *= std::abs(x - b.lo);
        if (b.hi != skip_hi) prod *= std::abs(x - b.hi);
    }
    return std::sqrt(prod);
}

double EquilibriumData::band_point(int band, double theta) const {
    const Band& b = set_.bands()[static_cast<std::size_t>(band)];
    return b.mid() - b.half() * std::cos(theta);
}

double EquilibriumData::band_theta_density(int band, double theta) const {
    const Band& b = set_.bands()[static_cast<std::size_t>(band)];
    const double x = band_point(band, theta);
    return std::abs(numerator(x)) / (kPi * other_endpoints_sqrt(x, b.lo, b.hi));
}

double EquilibriumData::density(double x) const {
    int j = set_.band_of(x);
    if (j < 0) return 0.0;
    double prod = 1.0;
    for (const Band& b : set_.bands()) prod *= std::abs(x - b.lo) * std::abs(x - b.hi);
    return std::abs(numerator(x)) / (kPi * std::sqrt(prod));
}

std::vector<QuadratureRule> EquilibriumData::make_band_rules(int points) const {
    std::vector<QuadratureRule> rules;
    const QuadratureRule theta = gauss_legendre(points, 0.0, kPi);
    for (int j = 0; j < static_cast<int>(set_.band_count()); ++j) {
        QuadratureRule r{Eigen::VectorXd(points), Eigen::VectorXd(points)};
        for (int i = 0; i < points; ++i) {
            r.nodes(i) = band_point(j, theta.nodes(i));
            r.weights(i) = theta.weights(i) * band_theta_density(j, theta.nodes(i));
        }
        rules.push_back(std::move(r));
    }
    return rules;
}

QuadratureRule EquilibriumData::discrete_measure(int points) const {
    const std::vector<QuadratureRule> rules = points > points_ ? make_band_rules(points) : rules_;
    Eigen::Index total = 0;
    for (const auto& r : rules) total += r.size();
    QuadratureRule out{Eigen::VectorXd(total), Eigen::VectorXd(total)};
    Eigen::Index at = 0;
    for (const auto& r : rules) {
        out.nodes.segment(at, r.size()) = r.nodes;
        out.weights.segment(at, r.size()) = r.weights;
        at += r.size();
    }
    return out;
}

double EquilibriumData::measure_of(double lo, double hi) const {
    double total = 0.0;
    for (int j = 0; j < static_cast<int>(set_.band_count()); ++j) {
        const Band& b = set_.bands()[static_cast<std::size_t>(j)];
        const double l = std::max(lo, b.lo), h = std::min(hi, b.hi);
        if (l >= h) continue;
        total += integrate_adaptive([&](double t) { return band_theta_density(j, t); }, theta_of(b, l),
                                    theta_of(b, h));
    }
    return total;
}

EquilibriumData equilibrium(const IntervalSet& set, int quad_points_per_band, double mass_tol) {
    if (quad_points_per_band < 8) throw DomainError("equilibrium: need at least 8 quadrature points per band");
    EquilibriumData eq;
    eq.set_ = set;
    const std::vector<Gap> gs = gaps(set);
    const int g = static_cast<int>(gs.size());

    if (g > 0) {
        // The gap conditions are linear in the coefficients of the monic
        // numerator; solve in the Chebyshev basis of the hull, then locate the
        // single sign change inside each gap.
        const Band hull = set.hull();
        auto to_u = [&](double x) { return (x - hull.mid()) / hull.half(); };
        Eigen::MatrixXd A(g, g);
        Eigen::VectorXd rhs(g);
        for (int i = 0; i < g; ++i) {
            const Gap& gap = gs[static_cast<std::size_t>(i)];
            const double m = 0.5 * (gap.left + gap.right), h = 0.5 * (gap.right - gap.left);
            for (int k = 0; k <= g; ++k) {
                auto integrand = [&](double phi) {
                    const double t = m - h * std::cos(phi);
                    const double tk = std::cos(k * std::acos(std::clamp(to_u(t), -1.0, 1.0)));
                    return tk / eq.other_endpoints_sqrt(t, gap.right, gap.left);
                };
                const double v = integrate_adaptive(integrand, 0.0, kPi, 1e-16, 1e-15);
                if (k < g) {
                    A(i, k) = v;
                } else {
                    rhs(i) = -std::ldexp(1.0, 1 - g) * v;
                }
            }
        }
        const Eigen::VectorXd d = A.fullPivLu().solve(rhs);
        Eigen::VectorXd coeffs(g + 1);
        coeffs.head(g) = d;
        coeffs(g) = std::ldexp(1.0, 1 - g);
        auto p = [&](double x) { return clenshaw(coeffs, to_u(x)); };

        for (const Gap& gap : gs) {
            double lo = gap.left, hi = gap.right;
            double flo = p(lo), fhi = p(hi);
            if (flo * fhi > 0.0) {
                std::ostringstream os;
                os << "equilibrium: no sign change of the density numerator in gap (" << gap.left << ", "
                   << gap.right << ")";
                throw NumericalError(os.str(), std::min(std::abs(flo), std::abs(fhi)));
            }
            for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
                const double mid = 0.5 * (lo + hi);
                if (mid <= lo || mid >= hi) break;
                const double fm = p(mid);
                if (fm == 0.0) {
                    lo = hi = mid;
                    break;
                }
                if ((fm > 0.0) == (flo > 0.0)) {
                    lo = mid;
                    flo = fm;
                } else {
                    hi = mid;
                }
            }
            eq.zeros_.push_back(0.5 * (lo + hi));
        }
    }

    double mass_sum = 0.0;
    for (int j = 0; j < static_cast<int>(set.band_count()); ++j) {
        const double m = integrate_adaptive([&](double t) { return eq.band_theta_density(j, t); }, 0.0, kPi);
        eq.masses_.push_back(m);
        mass_sum += m;
    }
    if (std::abs(mass_sum - 1.0) > mass_tol) {
        throw NumericalError("equilibrium: band masses do not sum to one", std::abs(mass_sum - 1.0));
    }

    int points = quad_points_per_band;
    for (;;) {
        eq.rules_ = eq.make_band_rules(points);
        double total = 0.0;
        for (const auto& r : eq.rules_) total += r.weights.sum();
        if (std::abs(total - 1.0) <= mass_tol) break;
        if (points >= 1024) {
            throw NumericalError("equilibrium: band quadrature mass check failed at 1024 points",
                                 std::abs(total - 1.0));
        }
        points *= 2;
    }
    eq.points_ = points;
    eq.log_cap_ = log_capacity(eq, set.hull().hi + 1.0);
    return eq;
}

double log_potential(const EquilibriumData& eq, double x) {
    double total = 0.0;
    const auto& bands = eq.set().bands();
    for (int j = 0; j < static_cast<int>(bands.size()); ++j) {
        const Band& b = bands[static_cast<std::size_t>(j)];
        // distances written without cancellation near the band edges
        auto f = [&](double t) {
            const double d = x >= b.hi ? (x - b.hi) + 2.0 * b.half() * std::pow(std::cos(0.5 * t), 2)
                                       : (b.lo - x) + 2.0 * b.half() * std::pow(std::sin(0.5 * t), 2);
            return d == 0.0 ? 0.0 : std::log(d) * eq.band_theta_density(j, t);
        };
        if (b.contains(x)) {
            // x - x(t) = half (cos t - cos tx) = -2 half sin((t+tx)/2) sin((t-tx)/2)
            const double split = theta_of(b, x);
            auto g = [&](double t) {
                const double d = 2.0 * b.half() * std::abs(std::sin(0.5 * (t + split)) * std::sin(0.5 * (t - split)));
                return d == 0.0 ? 0.0 : std::log(d) * eq.band_theta_density(j, t);
            };
            total += integrate_adaptive(g, 0.0, split) + integrate_adaptive(g, split, kPi);
        } else {
            total += integrate_adaptive(f, 0.0, kPi);
        }
    }
    return total;
}

double green(const EquilibriumData& eq, double x) {
    const IntervalSet& set = eq.set();
    if (set.contains(x)) return 0.0;
    const Band hull = set.hull();

    // Integrate |p(t)| / sqrt|R(t)| from the edge e to x with t = e + dir * s^2;
    // the factor sqrt|t - e| = s cancels against dt = 2 s ds.
    auto from_edge = [&](double e, double dir) {
        const double smax = std::sqrt(std::abs(x - e));
        auto f = [&](double s) {
            const double t = e + dir * s * s;
            double prod = 1.0;
            for (const Band& b : set.bands()) {
                if (b.lo != e) prod *= std::abs(t - b.lo);
                if (b.hi != e) prod *= std::abs(t - b.hi);
            }
            return 2.0 * eq.numerator(t) / std::sqrt(prod);
        };
        return std::abs(integrate_adaptive(f, 0.0, smax, 1e-16, 1e-14));
    };

    if (x > hull.hi) return from_edge(hull.hi, 1.0);
    if (x < hull.lo) return from_edge(hull.lo, -1.0);
    for (const Gap& gap : gaps(set)) {
        if (gap.left < x && x < gap.right) {
            return x - gap.left <= gap.right - x ? from_edge(gap.left, 1.0) : from_edge(gap.right, -1.0);
        }
    }
    return 0.0;
}

double log_capacity(const EquilibriumData& eq, double anchor) {
    const Band hull = eq.set().hull();
    if (hull.lo <= anchor && anchor <= hull.hi) throw DomainError("log_capacity: anchor must lie outside the hull");
    return log_potential(eq, anchor) - green(eq, anchor);
}

PwData pw_data(const EquilibriumData& eq) {
    PwData out;
    for (double z : eq.gap_zeros()) {
        out.critical_values.push_back(green(eq, z));
        out.sum += out.critical_values.back();
    }
    return out;
}

double integrate_dmu(const EquilibriumData& eq, const std::function<double(double)>& f) {
    double total = 0.0;
    for (const auto& r : eq.band_rules()) {
        for (Eigen::Index i = 0; i < r.size(); ++i) {
            const double v = f(r.nodes(i));
            if (!std::isfinite(v)) throw DomainError("integrate_dmu: integrand is not finite at a quadrature node");
            total += r.weights(i) * v;
        }
    }
    return total;
}

}  // namespace widom

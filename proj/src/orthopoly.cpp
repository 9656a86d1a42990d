#include "widomlab/orthopoly.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "widomlab/error.hpp"
#include "widomlab/quadrature.hpp"

namespace widom {

double JacobiSpec::operator()(double x) const {
    const double t = (2.0 * x - reference.lo - reference.hi) / (reference.hi - reference.lo);
    return std::pow(1.0 - t, alpha) * std::pow(1.0 + t, beta);
}

WeightSpec JacobiSpec::weight() const {
    const bool standard = reference == Band{-1.0, 1.0};
    if (standard && alpha == 0 && beta == 0) return WeightSpec::unit();
    if (standard && alpha == 0 && beta == 1) return WeightSpec::sqrt_one_plus();
    if (standard && alpha == 1 && beta == 0) return WeightSpec::sqrt_one_minus();
    if (standard && alpha == 1 && beta == 1) return WeightSpec::sqrt_one_minus_sq();
    return WeightSpec::jacobi_root(alpha, beta, reference);
}

JacobiSpec JacobiSpec::from_weight(const WeightSpec& w) {
    auto [a, b] = w.exponents();
    return {a, b, w.domain()};
}

Poly OrthoData::polynomial(int k) const {
    if (k < 0 || k >= static_cast<int>(norms.size())) throw DomainError("OrthoData::polynomial: degree out of range");
    Poly prev, cur = Poly::constant(1.0);
    const Poly x = Poly::x();
    for (int j = 0; j < k; ++j) {
        Poly next = (x - Poly::constant(a[static_cast<std::size_t>(j)])) * cur;
        if (j > 0) next = next - prev * b[static_cast<std::size_t>(j)];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

namespace {

void check_measure(const EquilibriumData& eq, const JacobiSpec& mu) {
    if (mu.alpha < 0 || mu.beta < 0) throw DomainError("jacobi measure: exponents must be nonnegative");
    if (!(mu.reference.lo < mu.reference.hi)) throw DomainError("jacobi measure: degenerate reference hull");
    if (mu.alpha + mu.beta == 0) return;
    const Band h = eq.set().hull();
    const double slack = 1e-12 * mu.reference.length();
    if (h.lo < mu.reference.lo - slack || h.hi > mu.reference.hi + slack) {
        throw DomainError("jacobi measure: set must lie inside the reference hull");
    }
}

// Nodes and mu-weights of the discretised measure.
QuadratureRule weighted_rule(const EquilibriumData& eq, const JacobiSpec& mu, int points) {
    QuadratureRule r = eq.discrete_measure(points);
    for (Eigen::Index i = 0; i < r.nodes.size(); ++i) r.weights(i) *= mu(r.nodes(i));
    return r;
}

}  // namespace

OrthoData stieltjes(const EquilibriumData& eq, const JacobiSpec& mu, int n) {
    if (n < 1) throw DomainError("stieltjes: degree must be at least 1");
    check_measure(eq, mu);
    const int points = std::max(eq.points_per_band(), 4 * (n + mu.alpha + mu.beta) + 32);
    const QuadratureRule r = weighted_rule(eq, mu, points);
    const Eigen::VectorXd& x = r.nodes;
    const Eigen::VectorXd& w = r.weights;

    OrthoData out;
    out.points_per_band = points;
    out.capacity = eq.capacity();
    Eigen::VectorXd prev = Eigen::VectorXd::Zero(x.size());
    Eigen::VectorXd cur = Eigen::VectorXd::Ones(x.size());
    for (int k = 0; k <= n; ++k) {
        const double nk = w.dot(cur.cwiseProduct(cur));
        if (!(nk > 0.0) || !std::isfinite(nk)) {
            std::ostringstream os;
            os << "stieltjes: non-positive norm at degree " << k << "; refine the quadrature";
            throw NumericalError(os.str(), nk);
        }
        out.norms.push_back(nk);
        if (k == n) break;
        const double ak = w.dot(x.cwiseProduct(cur.cwiseProduct(cur))) / nk;
        const double bk = k == 0 ? nk : nk / out.norms[static_cast<std::size_t>(k - 1)];
        out.a.push_back(ak);
        out.b.push_back(bk);
        Eigen::VectorXd next = (x.array() - ak).matrix().cwiseProduct(cur);
        if (k > 0) next -= bk * prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    const double log_cap = eq.log_capacity();
    for (int k = 0; k <= n; ++k) {
        out.widom2_sq.push_back(std::exp(std::log(out.norms[static_cast<std::size_t>(k)]) - 2.0 * k * log_cap));
    }
    out.entropy = entropy(eq, mu);
    return out;
}

double entropy_quadrature(const EquilibriumData& eq, const JacobiSpec& mu) {
    check_measure(eq, mu);
    if (mu.alpha + mu.beta == 0) return 1.0;
    const Band ref = mu.reference;
    const double scale = 2.0 / ref.length();
    double total = 0.0;
    const auto& bands = eq.set().bands();
    for (std::size_t j = 0; j < bands.size(); ++j) {
        const Band b = bands[j];
        const int band = static_cast<int>(j);
        auto integrand = [&](double theta) {
            // distances to the reference ends without cancellation near theta = 0, pi
            const double s = std::sin(0.5 * theta), c = std::cos(0.5 * theta);
            const double to_lo = (b.lo - ref.lo) + 2.0 * b.half() * s * s;
            const double to_hi = (ref.hi - b.hi) + 2.0 * b.half() * c * c;
            double v = 0.0;
            if (mu.alpha > 0) v += mu.alpha * std::log(scale * to_hi);
            if (mu.beta > 0) v += mu.beta * std::log(scale * to_lo);
            return v * eq.band_theta_density(band, theta);
        };
        total += integrate_adaptive(integrand, 0.0, std::numbers::pi, 1e-15, 1e-13);
    }
    return std::exp(total);
}

double entropy(const EquilibriumData& eq, const JacobiSpec& mu) {
    check_measure(eq, mu);
    if (mu.alpha + mu.beta == 0) return 1.0;
    // int log|x - t| d mu_K(t) = log Cap + g(x)
    const double log_scale = std::log(2.0 / mu.reference.length());
    const double log_cap = eq.log_capacity();
    double log_s = 0.0;
    if (mu.alpha > 0) log_s += mu.alpha * (log_scale + log_cap + green(eq, mu.reference.hi));
    if (mu.beta > 0) log_s += mu.beta * (log_scale + log_cap + green(eq, mu.reference.lo));
    const double s = std::exp(log_s);
    const double check = entropy_quadrature(eq, mu);
    if (std::abs(check - s) > 1e-6 * s) {
        throw NumericalError("entropy: potential and quadrature values disagree", std::abs(check - s) / s);
    }
    return s;
}

std::vector<double> gram_oracle(const EquilibriumData& eq, const JacobiSpec& mu, int n) {
    if (n < 0 || n > 12) throw DomainError("gram_oracle: degree must be in [0, 12]");
    check_measure(eq, mu);
    const Band hull = eq.set().hull();
    const int points = std::max(eq.points_per_band(), 8 * (n + mu.alpha + mu.beta) + 64);
    const QuadratureRule r = weighted_rule(eq, mu, points);
    // moments of u = (x - mid) / half keep the Hankel matrix well scaled
    Eigen::VectorXd moments = Eigen::VectorXd::Zero(2 * n + 1);
    for (Eigen::Index i = 0; i < r.nodes.size(); ++i) {
        const double u = (r.nodes(i) - hull.mid()) / hull.half();
        double p = r.weights(i);
        for (int j = 0; j <= 2 * n; ++j) {
            moments(j) += p;
            p *= u;
        }
    }
    Eigen::MatrixXd hankel(n + 1, n + 1);
    for (int i = 0; i <= n; ++i)
        for (int j = 0; j <= n; ++j) hankel(i, j) = moments(i + j);
    // det H_{k+1} / det H_k is the square of the k-th Cholesky pivot
    Eigen::LLT<Eigen::MatrixXd> llt(hankel);
    if (llt.info() != Eigen::Success) throw NumericalError("gram_oracle: non-positive Hankel determinant");
    const Eigen::MatrixXd l = llt.matrixL();
    std::vector<double> norms;
    for (int k = 0; k <= n; ++k) {
        const double pivot = l(k, k);
        if (!(pivot > 0.0)) throw NumericalError("gram_oracle: non-positive Hankel determinant", pivot);
        norms.push_back(pivot * pivot * std::pow(hull.half(), 2 * k));
    }
    return norms;
}

}  // namespace widom

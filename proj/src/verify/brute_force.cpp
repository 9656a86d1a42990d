#include "widomlab/verify/brute_force.hpp"

#include <algorithm>
#include <cmath>

#include "widomlab/error.hpp"
#include "widomlab/polynomial.hpp"

namespace widom::verify {

namespace {

std::vector<double> grid_on(const IntervalSet& set, int total) {
    double len = 0.0;
    for (const Band& b : set.bands()) len += b.length();
    std::vector<double> xs;
    int left = total;
    for (std::size_t j = 0; j < set.bands().size(); ++j) {
        const Band& b = set.bands()[j];
        const bool last = j + 1 == set.bands().size();
        const int m = last ? std::max(2, left) : std::max(2, static_cast<int>(std::lround(total * b.length() / len)));
        left -= m;
        for (int i = 0; i < m; ++i) xs.push_back(i == m - 1 ? b.hi : b.lo + b.length() * i / (m - 1));
    }
    return xs;
}

double max_step(const Eigen::VectorXd& v, const Eigen::VectorXd& dv) {
    double a = 1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (dv(i) < 0.0) a = std::min(a, -v(i) / dv(i));
    }
    return a;
}

}  // namespace

LpResult brute_force_minimax(const IntervalSet& set, const WeightSpec& weight, int n, int grid_points) {
    if (n < 1) throw DomainError("brute_force_minimax: degree must be at least 1");
    check_weight_domain(set, weight);
    const std::vector<double> xs = grid_on(set, grid_points);
    const Band hull = set.hull();
    const Eigen::Index m = static_cast<Eigen::Index>(xs.size());

    // Phi(i, k) = w_i T_k(u_i) for k < n, f_i = w_i 2^(1-n) T_n(u_i)
    Eigen::MatrixXd phi(m, n);
    Eigen::VectorXd f(m);
    for (Eigen::Index i = 0; i < m; ++i) {
        const double u = (xs[static_cast<std::size_t>(i)] - hull.mid()) / hull.half();
        const double w = weight(xs[static_cast<std::size_t>(i)]);
        double t0 = 1.0, t1 = u;
        for (int k = 0; k <= n; ++k) {
            const double tk = k == 0 ? t0 : t1;
            if (k < n) phi(i, k) = w * tk;
            else f(i) = w * std::ldexp(1.0, 1 - n) * tk;
            if (k >= 1) {
                const double t2 = 2.0 * u * t1 - t0;
                t0 = t1;
                t1 = t2;
            }
        }
    }

    // min E  s.t.  A y <= b,  y = (c, E):  +-(Phi c + f) <= E
    const Eigen::Index rows = 2 * m, cols = n + 1;
    Eigen::MatrixXd a(rows, cols);
    a.topLeftCorner(m, n) = phi;
    a.bottomLeftCorner(m, n) = -phi;
    a.col(n).setConstant(-1.0);
    Eigen::VectorXd b(rows);
    b << -f, f;
    Eigen::VectorXd c = Eigen::VectorXd::Zero(cols);
    c(n) = 1.0;

    Eigen::VectorXd y = Eigen::VectorXd::Zero(cols);
    y(n) = f.cwiseAbs().maxCoeff() + 1.0;
    Eigen::VectorXd s = b - a * y;
    Eigen::VectorXd z = Eigen::VectorXd::Ones(rows);

    LpResult out;
    for (int it = 1; it <= 200; ++it) {
        out.iterations = it;
        const Eigen::VectorXd rd = a.transpose() * z + c;
        const Eigen::VectorXd rp = a * y + s - b;
        const double mu = s.dot(z) / static_cast<double>(rows);
        const double scale = 1.0 + std::abs(y(n));
        if (s.dot(z) <= 1e-14 * scale && rp.norm() <= 1e-11 * scale && rd.norm() <= 1e-11) break;

        const Eigen::VectorXd d = z.cwiseQuotient(s);
        const Eigen::MatrixXd normal = a.transpose() * d.asDiagonal() * a;
        const Eigen::LDLT<Eigen::MatrixXd> ldlt(normal);
        auto solve = [&](const Eigen::VectorXd& rc, Eigen::VectorXd& dy, Eigen::VectorXd& ds, Eigen::VectorXd& dz) {
            const Eigen::VectorXd t = (z.cwiseProduct(rp) - rc).cwiseQuotient(s);
            dy = ldlt.solve(-rd - a.transpose() * t);
            ds = -rp - a * dy;
            dz = (-rc - z.cwiseProduct(ds)).cwiseQuotient(s);
        };

        Eigen::VectorXd dy, ds, dz;
        solve(s.cwiseProduct(z), dy, ds, dz);
        const double a_aff = std::min(max_step(s, ds), max_step(z, dz));
        const double mu_aff = (s + a_aff * ds).dot(z + a_aff * dz) / static_cast<double>(rows);
        const double sigma = std::pow(mu_aff / mu, 3);

        const Eigen::VectorXd rc = s.cwiseProduct(z) + ds.cwiseProduct(dz) - Eigen::VectorXd::Constant(rows, sigma * mu);
        solve(rc, dy, ds, dz);
        const double step = std::min(1.0, 0.99 * std::min(max_step(s, ds), max_step(z, dz)));
        y += step * dy;
        s += step * ds;
        z += step * dz;
    }
    out.gap = s.dot(z);
    out.coeffs.resize(n + 1);
    out.coeffs.head(n) = y.head(n);
    out.coeffs(n) = std::ldexp(1.0, 1 - n);
    // objective of the returned coefficients on the grid, rescaled to x
    const double err = (phi * y.head(n) + f).cwiseAbs().maxCoeff();
    out.value = err * std::pow(hull.half(), n);
    return out;
}

}  // namespace widom::verify

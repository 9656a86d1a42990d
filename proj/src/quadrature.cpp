#include "widomlab/quadrature.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <queue>
#include <vector>

namespace widom {

namespace {

QuadratureRule compute_gauss_legendre(int n) {
    QuadratureRule rule{Eigen::VectorXd(n), Eigen::VectorXd(n)};
    const int half = (n + 1) / 2;
    for (int i = 0; i < half; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n * (x * p1 - p0) / (x * x - 1.0);
            double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-16) break;
        }
        // recompute derivative at the converged node
        double p0 = 1.0, p1 = x;
        for (int k = 2; k <= n; ++k) {
            double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (x * p1 - p0) / (x * x - 1.0);
        double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes(i) = -x;
        rule.nodes(n - 1 - i) = x;
        rule.weights(i) = w;
        rule.weights(n - 1 - i) = w;
    }
    if (n % 2 == 1) rule.nodes(n / 2) = 0.0;
    return rule;
}

}  // namespace

const QuadratureRule& gauss_legendre(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<QuadratureRule>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[n];
    if (!slot) slot = std::make_unique<QuadratureRule>(compute_gauss_legendre(n));
    return *slot;
}

QuadratureRule gauss_legendre(int n, double a, double b) {
    const QuadratureRule& ref = gauss_legendre(n);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    return {(mid + half * ref.nodes.array()).matrix(), half * ref.weights};
}

namespace {

struct Panel {
    double a, b, value, error;
    bool operator<(const Panel& o) const { return error < o.error; }
};

Panel evaluate_panel(const std::function<double(double)>& f, double a, double b) {
    const QuadratureRule& g = gauss_legendre(20);
    const QuadratureRule& h = gauss_legendre(10);
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    double fine = 0.0, coarse = 0.0;
    for (Eigen::Index i = 0; i < g.size(); ++i) fine += g.weights(i) * f(mid + half * g.nodes(i));
    for (Eigen::Index i = 0; i < h.size(); ++i) coarse += h.weights(i) * f(mid + half * h.nodes(i));
    return {a, b, fine * half, std::abs(fine - coarse) * half};
}

}  // namespace

double integrate_adaptive(const std::function<double(double)>& f, double a, double b, double abs_tol,
                          double rel_tol) {
    if (a == b) return 0.0;
    std::priority_queue<Panel> heap;
    heap.push(evaluate_panel(f, a, b));
    double total = heap.top().value, err = heap.top().error;
    for (int iter = 0; iter < 2000; ++iter) {
        if (err <= abs_tol + rel_tol * std::abs(total)) break;
        Panel p = heap.top();
        if (std::abs(p.b - p.a) < 1e-15 * (std::abs(a) + std::abs(b) + 1.0)) break;
        heap.pop();
        const double m = 0.5 * (p.a + p.b);
        Panel l = evaluate_panel(f, p.a, m), r = evaluate_panel(f, m, p.b);
        total += l.value + r.value - p.value;
        err += l.error + r.error - p.error;
        heap.push(l);
        heap.push(r);
    }
    // re-sum to shed accumulated cancellation in the running total
    double sum = 0.0;
    while (!heap.empty()) {
        sum += heap.top().value;
        heap.pop();
    }
    return sum;
}

}  // namespace widom

#include "widomlab/sublevel.hpp"

#include <algorithm>
#include <cmath>

namespace widom {

int Sublevel::full_branch_count() const {
    return static_cast<int>(std::count(full.begin(), full.end(), true));
}

namespace {

// Solve q(x) = level on [l, r] where q is monotone in the given direction.
double solve_monotone(const Poly& q, double level, double l, double r, bool rising) {
    for (int i = 0; i < 200; ++i) {
        const double m = 0.5 * (l + r);
        if (m <= l || m >= r) break;
        const bool below = q(m) < level;
        if (below == rising) {
            l = m;
        } else {
            r = m;
        }
    }
    return 0.5 * (l + r);
}

}  // namespace

Sublevel sublevel_set(const Poly& q, double lo, double hi, const std::vector<Poly>& critical_factors,
                      double touch_tol) {
    Sublevel out;
    std::vector<double> crit;
    for (const Poly& f : critical_factors) {
        if (f.degree() < 1) continue;
        for (auto z : polynomial_roots(f)) {
            if (std::abs(z.imag()) <= 1e-6 * std::max(1.0, std::abs(z))) {
                crit.push_back(polish_root(f, z.real()));
            } else {
                ++out.complex_critical;
            }
        }
    }
    std::sort(crit.begin(), crit.end());
    crit.erase(std::unique(crit.begin(), crit.end(),
                           [](double a, double b) { return std::abs(a - b) <= 1e-12 * std::max(1.0, std::abs(a)); }),
               crit.end());

    const double span = hi - lo;
    auto snap = [&](double v) {
        if (std::abs(v - hi) <= touch_tol * span) return hi;
        if (std::abs(v - lo) <= touch_tol * span) return lo;
        return v;
    };
    for (double c : crit) out.critical.push_back({c, q(c)});

    double bound = 1.0;
    const double lead = std::abs(q.leading());
    for (int k = 0; k < q.degree(); ++k) {
        double c = std::abs(q[k]);
        if (k == 0) c = std::max({c, std::abs(q[0] - lo), std::abs(q[0] - hi)});
        bound = std::max(bound, 1.0 + c / lead);
    }
    for (double c : crit) bound = std::max(bound, std::abs(c) + 1.0);

    std::vector<double> pts{-bound};
    std::vector<double> vals{q(-bound)};
    for (double c : crit) {
        pts.push_back(c);
        vals.push_back(snap(q(c)));
    }
    pts.push_back(bound);
    vals.push_back(q(bound));

    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double l = pts[i], r = pts[i + 1], vl = vals[i], vr = vals[i + 1];
        if (vl == vr) continue;
        const bool rising = vr > vl;
        const double vmin = std::min(vl, vr), vmax = std::max(vl, vr);
        const double a = std::max(vmin, lo), b = std::min(vmax, hi);
        if (a > b) continue;
        auto at = [&](double level) {
            if (level == vl) return l;
            if (level == vr) return r;
            return solve_monotone(q, level, l, r, rising);
        };
        const double xa = at(a), xb = at(b);
        Band piece{std::min(xa, xb), std::max(xa, xb)};
        if (!(piece.lo < piece.hi)) continue;
        out.branches.push_back(piece);
        out.full.push_back(vmin <= lo && vmax >= hi);
    }

    const double scale = bound;
    for (const Band& b : out.branches) {
        if (!out.bands.empty() && b.lo <= out.bands.back().hi + 1e-14 * scale) {
            out.bands.back().hi = std::max(out.bands.back().hi, b.hi);
        } else {
            out.bands.push_back(b);
        }
    }
    return out;
}

Sublevel sublevel_set(const Poly& q, double lo, double hi, double touch_tol) {
    return sublevel_set(q, lo, hi, std::vector<Poly>{q.derivative()}, touch_tol);
}

}  // namespace widom

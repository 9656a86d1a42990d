#include "widomlab/chebyshev.hpp"

#include <algorithm>
#include <functional>
#include <numbers>
#include <sstream>

#include "widomlab/error.hpp"
#include "widomlab/sublevel.hpp"

namespace widom {

double ChebyshevSolution::operator()(double x) const {
    const double u = (x - hull.mid()) / hull.half();
    return std::pow(hull.half(), degree) * clenshaw(coeffs, u);
}

Poly ChebyshevSolution::monomial() const {
    const Poly in_u = chebyshev_to_monomial(std::span<const double>(coeffs.data(), static_cast<std::size_t>(coeffs.size())));
    return in_u.compose_affine(1.0 / hull.half(), -hull.mid() / hull.half()) * std::pow(hull.half(), degree);
}

namespace {

constexpr double kInvPhi = 0.6180339887498949;

struct Extremum {
    double x;
    double e;
};

using ErrorFn = std::function<double(double)>;

// Maximise sign * f on [a, b]; endpoints included.
Extremum golden_max(const ErrorFn& f, double a, double b, double sign) {
    double lo = a, hi = b;
    double x1 = hi - kInvPhi * (hi - lo), x2 = lo + kInvPhi * (hi - lo);
    double f1 = sign * f(x1), f2 = sign * f(x2);
    for (int i = 0; i < 100 && hi - lo > 1e-15 * (std::abs(lo) + std::abs(hi) + 1e-300); ++i) {
        if (f1 < f2) {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + kInvPhi * (hi - lo);
            f2 = sign * f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - kInvPhi * (hi - lo);
            f1 = sign * f(x1);
        }
    }
    Extremum best{x1, sign * f1};
    if (f2 > f1) best = {x2, sign * f2};
    for (double x : {a, b}) {
        const double v = f(x);
        if (sign * v > sign * best.e) best = {x, v};
    }
    return best;
}

std::vector<double> band_grid(const Band& b, int m) {
    std::vector<double> g(static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) g[static_cast<std::size_t>(i)] = b.mid() - b.half() * std::cos(std::numbers::pi * i / (m - 1));
    g.front() = b.lo;
    g.back() = b.hi;
    return g;
}

// Local maxima of |f| on K, refined, with same-sign neighbours merged.
std::vector<Extremum> find_extrema(const IntervalSet& set, const ErrorFn& f, int m) {
    std::vector<Extremum> raw;
    for (const Band& b : set.bands()) {
        const std::vector<double> g = band_grid(b, m);
        std::vector<double> v(g.size());
        for (std::size_t i = 0; i < g.size(); ++i) v[i] = f(g[i]);
        for (std::size_t i = 0; i < g.size(); ++i) {
            const double a = std::abs(v[i]);
            if (a == 0.0) continue;
            if (i > 0 && std::abs(v[i - 1]) > a) continue;
            if (i + 1 < g.size() && std::abs(v[i + 1]) > a) continue;
            const double lo = g[i == 0 ? 0 : i - 1], hi = g[std::min(i + 1, g.size() - 1)];
            const double sign = v[i] > 0 ? 1.0 : -1.0;
            Extremum ext = golden_max(f, lo, hi, sign);
            if (sign * ext.e < a) ext = {g[i], v[i]};
            raw.push_back(ext);
        }
    }
    std::vector<Extremum> merged;
    for (const Extremum& e : raw) {
        if (!merged.empty() && (merged.back().e > 0) == (e.e > 0)) {
            if (std::abs(e.e) > std::abs(merged.back().e)) merged.back() = e;
        } else {
            merged.push_back(e);
        }
    }
    return merged;
}

// Reduce an alternating list to exactly `count` points, keeping the largest.
void trim_alternating(std::vector<Extremum>& ext, std::size_t count) {
    while (ext.size() > count) {
        if (ext.size() == count + 1) {
            if (std::abs(ext.front().e) < std::abs(ext.back().e)) {
                ext.erase(ext.begin());
            } else {
                ext.pop_back();
            }
            continue;
        }
        auto it = std::min_element(ext.begin(), ext.end(),
                                   [](const Extremum& a, const Extremum& b) { return std::abs(a.e) < std::abs(b.e); });
        const std::size_t i = static_cast<std::size_t>(it - ext.begin());
        if (i == 0 || i + 1 == ext.size()) {
            ext.erase(it);
            continue;
        }
        // dropping an interior point leaves two same-sign neighbours
        const std::size_t drop = std::abs(ext[i - 1].e) < std::abs(ext[i + 1].e) ? i - 1 : i + 1;
        ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(std::max(i, drop)));
        ext.erase(ext.begin() + static_cast<std::ptrdiff_t>(std::min(i, drop)));
    }
}

// Classical one-point exchange of the global maximiser into the reference.
void single_exchange(std::vector<double>& ref, const std::vector<double>& ref_err, const Extremum& peak) {
    const auto same = [&](std::size_t i) { return (ref_err[i] > 0) == (peak.e > 0); };
    const std::size_t last = ref.size() - 1;
    if (peak.x < ref.front()) {
        if (same(0)) {
            ref[0] = peak.x;
        } else {
            ref.insert(ref.begin(), peak.x);
            ref.pop_back();
        }
        return;
    }
    if (peak.x > ref.back()) {
        if (same(last)) {
            ref[last] = peak.x;
        } else {
            ref.push_back(peak.x);
            ref.erase(ref.begin());
        }
        return;
    }
    for (std::size_t j = 0; j < last; ++j) {
        if (ref[j] <= peak.x && peak.x <= ref[j + 1]) {
            if (same(j)) {
                ref[j] = peak.x;
            } else {
                ref[j + 1] = peak.x;
            }
            return;
        }
    }
}

std::vector<double> initial_reference(const EquilibriumData& eq, int n) {
    const auto& bands = eq.set().bands();
    const auto& mass = eq.band_masses();
    const int total = n + 1;
    std::vector<int> count(bands.size());
    std::vector<std::pair<double, std::size_t>> remainder;
    int assigned = 0;
    for (std::size_t j = 0; j < bands.size(); ++j) {
        const double share = total * mass[j];
        count[j] = static_cast<int>(std::floor(share));
        assigned += count[j];
        remainder.emplace_back(share - count[j], j);
    }
    std::stable_sort(remainder.begin(), remainder.end(), [](auto a, auto b) { return a.first > b.first; });
    for (std::size_t k = 0; assigned < total; ++k, ++assigned) ++count[remainder[k % remainder.size()].second];

    std::vector<double> ref;
    for (std::size_t j = 0; j < bands.size(); ++j) {
        const int m = count[j];
        for (int i = 0; i < m; ++i) {
            ref.push_back(bands[j].mid() - bands[j].half() * std::cos(std::numbers::pi * (i + 0.5) / m));
        }
    }
    return ref;
}

}  // namespace

ChebyshevSolution remez(const EquilibriumData& eq, const WeightSpec& weight, int n, double tol,
                        const RemezOptions& opts) {
    if (n < 1) throw DomainError("remez: degree must be at least 1");
    if (!(tol > 0.0)) throw DomainError("remez: tolerance must be positive");
    const IntervalSet& set = eq.set();
    check_weight_domain(set, weight);

    ChebyshevSolution sol;
    sol.degree = n;
    sol.hull = set.hull();
    sol.capacity = eq.capacity();
    const Band hull = sol.hull;
    const double lead = std::ldexp(1.0, 1 - n);

    std::vector<double> ref = initial_reference(eq, n);
    Eigen::VectorXd coeffs(n + 1);
    auto error_fn = [&](double x) {
        return weight(x) * clenshaw(coeffs, (x - hull.mid()) / hull.half());
    };

    Eigen::MatrixXd A(n + 1, n + 1);
    Eigen::VectorXd rhs(n + 1);
    double prev_level = -1.0;
    for (int it = 1; it <= opts.max_iterations; ++it) {
        for (std::size_t i = 1; i < ref.size(); ++i) {
            if (!(ref[i] - ref[i - 1] > 1e-15 * hull.length())) {
                throw NumericalError("remez: reference degeneracy (coincident reference points)", ref[i] - ref[i - 1]);
            }
        }
        for (int i = 0; i <= n; ++i) {
            const double x = ref[static_cast<std::size_t>(i)];
            const double u = (x - hull.mid()) / hull.half();
            const double w = weight(x);
            double t0 = 1.0, t1 = u;
            for (int k = 0; k <= n; ++k) {
                const double tk = k == 0 ? t0 : t1;
                if (k < n) A(i, k) = w * tk;
                else rhs(i) = -w * lead * tk;
                if (k >= 1) {
                    const double t2 = 2.0 * u * t1 - t0;
                    t0 = t1;
                    t1 = t2;
                }
            }
            A(i, n) = ((n - i) % 2 == 0) ? -1.0 : 1.0;
        }
        Eigen::FullPivLU<Eigen::MatrixXd> lu(A);
        if (lu.rank() < n + 1) throw NumericalError("remez: singular reference system");
        const Eigen::VectorXd sol_vec = lu.solve(rhs);
        coeffs.head(n) = sol_vec.head(n);
        coeffs(n) = lead;
        const double level = std::abs(sol_vec(n));

        std::vector<Extremum> ext = find_extrema(set, error_fn, opts.grid_per_band);
        if (ext.empty()) throw NumericalError("remez: error function vanishes on the grid");
        const double max_abs =
            std::abs(std::max_element(ext.begin(), ext.end(), [](auto a, auto b) { return std::abs(a.e) < std::abs(b.e); })->e);

        const bool level_settled = prev_level > 0.0 && std::abs(level - prev_level) <= tol * level;
        if (level_settled && max_abs <= level * (1.0 + opts.validation_tol)) {
            std::vector<Extremum> dense = find_extrema(set, error_fn, opts.grid_per_band * opts.validation_factor);
            double dense_max = 0.0;
            for (const auto& e : dense) dense_max = std::max(dense_max, std::abs(e.e));
            if (dense_max <= level * (1.0 + opts.validation_tol) && dense.size() >= static_cast<std::size_t>(n + 1)) {
                trim_alternating(dense, static_cast<std::size_t>(n + 1));
                const double scale = std::pow(hull.half(), n);
                sol.coeffs = coeffs;
                sol.level = level * scale;
                sol.norm = dense_max * scale;
                sol.max_deviation = (dense_max - level) / level;
                sol.iterations = it;
                for (const auto& e : dense) {
                    sol.alternation_points.push_back(e.x);
                    sol.alternation_values.push_back(e.e * scale);
                }
                sol.widom_inf = sol.norm / std::pow(sol.capacity, n);
                for (double v : sol.alternation_values) {
                    if (std::abs(std::abs(v) - sol.norm) > 1e-9 * sol.norm) {
                        throw NumericalError("remez: alternation set not equioscillating", std::abs(std::abs(v) - sol.norm) / sol.norm);
                    }
                }
                return sol;
            }
            ext = std::move(dense);
        }
        prev_level = level;

        if (ext.size() >= static_cast<std::size_t>(n + 1)) {
            trim_alternating(ext, static_cast<std::size_t>(n + 1));
            ref.clear();
            for (const auto& e : ext) ref.push_back(e.x);
        } else {
            std::vector<double> ref_err;
            for (double x : ref) ref_err.push_back(error_fn(x));
            const Extremum peak = *std::max_element(ext.begin(), ext.end(),
                                                    [](auto a, auto b) { return std::abs(a.e) < std::abs(b.e); });
            single_exchange(ref, ref_err, peak);
        }
    }
    std::ostringstream os;
    os << "remez: no convergence within " << opts.max_iterations << " iterations (degree " << n << ")";
    throw NumericalError(os.str(), prev_level);
}

ChebyshevSolution remez(const IntervalSet& set, const WeightSpec& weight, int n, double tol, const RemezOptions& opts) {
    return remez(equilibrium(set), weight, n, tol, opts);
}

double weighted_sup_norm(const IntervalSet& set, const WeightSpec& weight, const Poly& p, int points) {
    auto f = [&](double x) { return weight(x) * p(x); };
    double best = 0.0;
    for (const auto& e : find_extrema(set, f, points)) best = std::max(best, std::abs(e.e));
    return best;
}

SupBounds sup_bounds(const EquilibriumData& eq, const WeightSpec& weight) {
    double end = 0.0;
    if (weight.kind == WeightKind::SqrtOnePlus) {
        end = -1.0;
    } else if (weight.kind == WeightKind::SqrtOneMinus) {
        end = 1.0;
    } else {
        throw DomainError("sup_bounds: only the sqrt_one_plus and sqrt_one_minus weights are supported");
    }
    check_weight_domain(eq.set(), weight);
    SupBounds b;
    b.lower = 2.0 * std::sqrt(eq.capacity());
    b.upper = b.lower * std::exp(0.5 * green(eq, end) + pw_data(eq).sum);
    return b;
}

KindPolynomial kind_polynomial(ChebyshevKind kind, int n) {
    if (n < 0) throw DomainError("kind_polynomial: negative degree");
    Poly p0 = Poly::constant(1.0), p1;
    WeightSpec w;
    double sup = 1.0;  // sup of w * (unnormalised) P_n on [-1, 1]
    switch (kind) {
        case ChebyshevKind::First:
            p1 = Poly({0.0, 1.0});
            w = WeightSpec::unit();
            break;
        case ChebyshevKind::Second:
            p1 = Poly({0.0, 2.0});
            w = WeightSpec::sqrt_one_minus_sq();
            break;
        case ChebyshevKind::Third:
            p1 = Poly({-1.0, 2.0});
            w = WeightSpec::sqrt_one_plus();
            sup = std::numbers::sqrt2;
            break;
        case ChebyshevKind::Fourth:
            p1 = Poly({1.0, 2.0});
            w = WeightSpec::sqrt_one_minus();
            sup = std::numbers::sqrt2;
            break;
    }
    Poly p = n == 0 ? p0 : p1;
    const Poly two_x({0.0, 2.0});
    for (int k = 1; k < n; ++k) {
        Poly next = two_x * p1 - p0;
        p0 = std::move(p1);
        p1 = std::move(next);
        p = p1;
    }
    if (kind == ChebyshevKind::Second && n == 0) sup = 1.0;
    const double lead = p.leading();
    KindPolynomial out{kind, n, p * (1.0 / lead), w, sup / lead, 0.0};
    out.widom_inf = out.norm / std::ldexp(1.0, -n);
    return out;
}

IntervalSet enclosing_preimage(const IntervalSet& set, const WeightSpec& weight, const ChebyshevSolution& sol) {
    double sign = 0.0;
    if (weight.kind == WeightKind::SqrtOnePlus) {
        sign = 1.0;
    } else if (weight.kind == WeightKind::SqrtOneMinus) {
        sign = -1.0;
    } else {
        throw DomainError("enclosing_preimage: only the sqrt_one_plus and sqrt_one_minus weights are supported");
    }
    check_weight_domain(set, weight);
    const int n = sol.degree;
    const Poly p = sol.monomial();
    const Poly lin({1.0, sign});  // 1 +- x
    const Poly q = lin * p * p;
    // Q' = p (+-p + 2 (1 +- x) p')
    const Poly second = p * sign + lin * p.derivative() * 2.0;
    const double top = sol.norm * sol.norm;
    const Sublevel sub = sublevel_set(q, 0.0, top, {p, second});
    if (sub.full_branch_count() != 2 * n + 1) {
        std::ostringstream os;
        os << "enclosing_preimage: expected " << 2 * n + 1 << " monotone branches, found " << sub.full_branch_count();
        throw NumericalError(os.str());
    }
    const IntervalSet kn = normalize(std::span<const Band>(sub.bands), 0.0);
    for (const Band& b : set.bands()) {
        bool inside = false;
        for (const Band& c : kn.bands()) inside = inside || (c.lo - 1e-9 <= b.lo && b.hi <= c.hi + 1e-9);
        if (!inside) throw NumericalError("enclosing_preimage: K is not contained in K_n");
    }
    return kn;
}

}  // namespace widom

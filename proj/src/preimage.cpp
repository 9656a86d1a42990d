#include "widomlab/preimage.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace widom {

std::string to_string(PreimageVariant v) {
    switch (v) {
        case PreimageVariant::OnePlus: return "one_plus";
        case PreimageVariant::OneMinus: return "one_minus";
        case PreimageVariant::OneMinusSq: return "one_minus_sq";
    }
    return "?";
}

std::optional<PreimageVariant> parse_variant(const std::string& name) {
    if (name == "one_plus") return PreimageVariant::OnePlus;
    if (name == "one_minus") return PreimageVariant::OneMinus;
    if (name == "one_minus_sq") return PreimageVariant::OneMinusSq;
    return std::nullopt;
}

void PreimageSpec::validate() const {
    if (s_coeffs.size() < 2) throw DomainError("preimage: S must have degree at least 1");
    for (double c : s_coeffs) {
        if (!std::isfinite(c)) throw DomainError("preimage: non-finite coefficient in S");
    }
    if (s_coeffs.back() == 0.0) throw DomainError("preimage: leading coefficient of S is zero");
}

Poly PreimageSpec::s() const { return Poly(s_coeffs); }

Poly PreimageSpec::form() const {
    switch (variant) {
        case PreimageVariant::OnePlus: return Poly({1.0, 1.0});
        case PreimageVariant::OneMinus: return Poly({1.0, -1.0});
        case PreimageVariant::OneMinusSq: return Poly({1.0, 0.0, -1.0});
    }
    return Poly::constant(1.0);
}

Poly PreimageSpec::q() const {
    const Poly sp = s();
    return form() * sp * sp;
}

int PreimageSpec::degree() const { return static_cast<int>(s_coeffs.size()) - 1; }

int PreimageSpec::top_degree() const {
    return 2 * degree() + (variant == PreimageVariant::OneMinusSq ? 2 : 1);
}

double PreimageSpec::leading() const { return s_coeffs.back(); }

WeightSpec PreimageSpec::weight() const {
    switch (variant) {
        case PreimageVariant::OnePlus: return WeightSpec::sqrt_one_plus();
        case PreimageVariant::OneMinus: return WeightSpec::sqrt_one_minus();
        case PreimageVariant::OneMinusSq: return WeightSpec::sqrt_one_minus_sq();
    }
    return WeightSpec::unit();
}

JacobiSpec PreimageSpec::measure() const { return JacobiSpec::from_weight(weight()); }

std::optional<RationalPoly> PreimageSpec::exact_s() const {
    std::vector<Rational> c;
    try {
        for (double v : s_coeffs) c.push_back(Rational::from_decimal(v));
    } catch (const std::exception&) {
        return std::nullopt;
    }
    return RationalPoly(std::move(c));
}

namespace {

RationalPoly exact_form(PreimageVariant v) {
    switch (v) {
        case PreimageVariant::OnePlus: return RationalPoly({Rational(1), Rational(1)});
        case PreimageVariant::OneMinus: return RationalPoly({Rational(1), Rational(-1)});
        case PreimageVariant::OneMinusSq: return RationalPoly({Rational(1), Rational(0), Rational(-1)});
    }
    return RationalPoly::constant(Rational(1));
}

Sublevel analyse(const PreimageSpec& spec, double touch_tol) {
    const Poly s = spec.s(), f = spec.form();
    // Q' = S (F' S + 2 F S')
    const Poly second = f.derivative() * s + f * s.derivative() * 2.0;
    return sublevel_set(spec.q(), 0.0, 1.0, {s, second}, touch_tol);
}

}  // namespace

Admissibility check_admissibility(const PreimageSpec& spec, double touch_tol) {
    spec.validate();
    Admissibility out;
    const Poly s = spec.s();
    out.s_roots_real = true;
    for (auto z : polynomial_roots(s)) {
        if (std::abs(z.imag()) > 1e-6 * std::max(1.0, std::abs(z))) out.s_roots_real = false;
    }
    const Sublevel sub = analyse(spec, touch_tol);
    out.complex_critical = sub.complex_critical;
    for (const auto& c : sub.critical) {
        const bool ok = c.value <= touch_tol || c.value >= 1.0 - touch_tol;
        out.critical.push_back({c.x, c.value, ok});
    }
    out.full_branches = sub.full_branch_count();
    out.inside_unit = !sub.bands.empty() && sub.bands.front().lo >= -1.0 - 1e-12 && sub.bands.back().hi <= 1.0 + 1e-12;

    std::ostringstream why;
    why.precision(17);
    if (!out.s_roots_real) {
        why << "S has non-real roots";
    } else if (out.complex_critical > 0) {
        why << "Q has " << out.complex_critical << " non-real critical points";
    } else {
        for (const auto& c : out.critical) {
            if (!c.admissible) {
                why << "critical value " << c.value << " at x = " << c.x << " lies in (0, 1)";
                break;
            }
        }
    }
    if (why.str().empty()) {
        if (out.full_branches != spec.top_degree()) {
            why << "expected " << spec.top_degree() << " full branches over [0, 1], found " << out.full_branches;
        } else if (!out.inside_unit) {
            why << "preimage set escapes [-1, 1]";
        }
    }
    out.reason = why.str();
    out.admissible = out.reason.empty();
    return out;
}

PreimageSet build_set(const PreimageSpec& spec, double root_tol) {
    Admissibility report = check_admissibility(spec);
    if (!report.admissible) throw InadmissibleSpec("inadmissible preimage spec: " + report.reason, report);
    const Sublevel sub = analyse(spec, 1e-10);
    std::vector<Band> bands = sub.bands;
    auto snap = [&](double x) {
        if (std::abs(x + 1.0) <= root_tol) return -1.0;
        if (std::abs(x - 1.0) <= root_tol) return 1.0;
        return x;
    };
    for (Band& b : bands) {
        b.lo = snap(b.lo);
        b.hi = snap(b.hi);
    }
    PreimageSet out{normalize(std::span<const Band>(bands)), std::move(report), {}};
    for (std::size_t i = 0; i < sub.branches.size(); ++i) {
        if (sub.full[i]) out.branches.push_back({snap(sub.branches[i].lo), snap(sub.branches[i].hi)});
    }
    return out;
}

ExactOracle exact_invariants(const PreimageSpec& spec) {
    const Admissibility report = check_admissibility(spec);
    if (!report.admissible) throw InadmissibleSpec("inadmissible preimage spec: " + report.reason, report);
    const int big_n = spec.top_degree();
    const double c = spec.leading();
    // top-degree polynomial is sign * (Q - 1/2) / c^2
    const double sign = spec.variant == PreimageVariant::OnePlus ? 1.0 : -1.0;

    ExactOracle o;
    o.cap_power = 1.0 / (4.0 * c * c);
    o.log_capacity = -(std::log(4.0) + 2.0 * std::log(std::abs(c))) / big_n;
    o.capacity = std::exp(o.log_capacity);
    o.chebyshev_top = (spec.q() - Poly::constant(0.5)) * (sign / (c * c));
    o.top_norm = 2.0 * o.cap_power;
    o.t_exact = 1.0 / std::abs(c);
    o.widom_inf = spec.variant == PreimageVariant::OneMinusSq ? 2.0 * o.capacity : 2.0 * std::sqrt(o.capacity);
    // every preimage set contains the zeros of its form, so S = Cap^(alpha + beta)
    const auto [alpha, beta] = spec.weight().exponents();
    o.entropy = std::exp((alpha + beta) * o.log_capacity);
    o.widom2_sq = 2.0 * o.entropy;
    o.chebyshev = spec.s() * (1.0 / c);

    if (auto s = spec.exact_s()) {
        try {
            const Rational ce = s->leading();
            const RationalPoly q = exact_form(spec.variant) * *s * *s;
            o.cap_power_exact = Rational(1) / (Rational(4) * ce * ce);
            const Rational scale = Rational(static_cast<std::int64_t>(sign)) / (ce * ce);
            o.chebyshev_top_exact = (q - RationalPoly::constant(Rational(1, 2))) * scale;
            o.chebyshev_exact = *s * (Rational(1) / ce);
        } catch (const std::overflow_error&) {
            o.cap_power_exact.reset();
            o.chebyshev_top_exact.reset();
            o.chebyshev_exact.reset();
        }
    }
    return o;
}

bool SaturationReport::passed() const {
    return std::all_of(clauses.begin(), clauses.end(), [](const Clause& c) { return c.pass; });
}

const Clause* SaturationReport::find(char id) const {
    for (const auto& c : clauses) {
        if (c.id == id) return &c;
    }
    return nullptr;
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double max_coeff_diff(const Poly& a, const Poly& b) {
    const Poly d = a - b;
    double m = 0.0;
    for (double v : d.coeffs()) m = std::max(m, std::abs(v));
    return m;
}

template <typename F>
Clause run_clause(char id, std::string name, double tol, F&& deviation) {
    double dev = kInf;
    try {
        dev = deviation();
    } catch (const NumericalError&) {
        dev = kInf;
    }
    return {id, std::move(name), std::abs(dev) <= tol, dev};
}

double equality_bound(const WeightSpec& w, double capacity) {
    if (w.kind == WeightKind::SqrtOneMinusSq) return 2.0 * capacity;
    if (w.kind == WeightKind::SqrtOnePlus || w.kind == WeightKind::SqrtOneMinus) return 2.0 * std::sqrt(capacity);
    throw DomainError("equality check: weight " + w.name() + " has no equality bound");
}

}  // namespace

SaturationReport saturation_verify(const PreimageSpec& spec, double tol) {
    const PreimageSet built = build_set(spec);
    const ExactOracle oracle = exact_invariants(spec);
    const EquilibriumData eq = equilibrium(built.set);
    const WeightSpec w = spec.weight();
    const int n = spec.degree();

    SaturationReport r;
    r.capacity = eq.capacity();
    r.widom_bound = oracle.widom_inf;
    r.two_s = oracle.widom2_sq;

    r.clauses.push_back(run_clause('a', "capacity", tol, [&] { return eq.log_capacity() - oracle.log_capacity; }));

    std::optional<ChebyshevSolution> sol;
    r.clauses.push_back(run_clause('b', "sup-norm equality", tol, [&] {
        sol = remez(eq, w, n);
        r.widom_inf = sol->widom_inf;
        return sol->widom_inf - oracle.widom_inf;
    }));

    std::optional<OrthoData> od;
    r.clauses.push_back(run_clause('c', "L2 equality", tol, [&] {
        od = stieltjes(eq, spec.measure(), n);
        r.widom2_sq = od->widom2_sq[static_cast<std::size_t>(n)];
        return r.widom2_sq - oracle.widom2_sq;
    }));

    r.clauses.push_back(run_clause('d', "P_n = S/c = T_n,w", tol, [&] {
        if (!sol || !od) return kInf;
        return std::max(max_coeff_diff(sol->monomial(), oracle.chebyshev),
                        max_coeff_diff(od->polynomial(n), oracle.chebyshev));
    }));

    r.clauses.push_back(run_clause('e', "top-degree Chebyshev polynomial", tol, [&] {
        const auto top = remez(eq, WeightSpec::unit(), spec.top_degree());
        return max_coeff_diff(top.monomial(), oracle.chebyshev_top);
    }));
    return r;
}

SaturationReport equality_check(const IntervalSet& set, const WeightSpec& weight, int n, double tol) {
    const EquilibriumData eq = equilibrium(set);
    SaturationReport r;
    r.capacity = eq.capacity();
    r.widom_bound = equality_bound(weight, r.capacity);
    const JacobiSpec mu = JacobiSpec::from_weight(weight);
    r.two_s = 2.0 * entropy(eq, mu);
    r.clauses.push_back(run_clause('b', "sup-norm equality", tol, [&] {
        r.widom_inf = remez(eq, weight, n).widom_inf;
        return r.widom_inf - r.widom_bound;
    }));
    r.clauses.push_back(run_clause('c', "L2 equality", tol, [&] {
        r.widom2_sq = stieltjes(eq, mu, n).widom2_sq[static_cast<std::size_t>(n)];
        return r.widom2_sq - r.two_s;
    }));
    return r;
}

AffineInstance affine_instance(const PreimageSpec& spec, Band target) {
    if (!(target.lo < target.hi) || !std::isfinite(target.lo) || !std::isfinite(target.hi)) {
        throw DomainError("affine_instance: degenerate target hull");
    }
    const PreimageSet built = build_set(spec);
    AffineInstance out;
    out.target = target;
    out.set = affine_map(built.set, {-1.0, 1.0}, target);
    const auto [alpha, beta] = spec.weight().exponents();
    out.measure = {alpha, beta, target};
    out.weight = out.measure.weight();

    const int n = spec.degree();
    const double c = spec.leading();
    const double len = target.length();
    // S(T(x)) with T(x) = (2x - a - b) / (b - a)
    out.orthogonal = spec.s().compose_affine(2.0 / len, -(target.lo + target.hi) / len) * (std::pow(0.5 * len, n) / c);

    if (auto s = spec.exact_s()) {
        try {
            const Rational a = Rational::from_decimal(target.lo), b = Rational::from_decimal(target.hi);
            const Rational l = b - a;
            Rational factor = Rational(1) / s->leading();
            for (int k = 0; k < n; ++k) factor *= l / Rational(2);
            out.orthogonal_exact = s->compose_affine(Rational(2) / l, -(a + b) / l) * factor;
        } catch (const std::exception&) {
            out.orthogonal_exact.reset();
        }
    }
    return out;
}

}  // namespace widom

#include "widomlab/weight.hpp"

#include "widomlab/error.hpp"

namespace widom {

WeightSpec WeightSpec::jacobi_root(int alpha, int beta, Band reference) {
    if (alpha < 0 || beta < 0 || alpha + beta < 1) throw DomainError("jacobi_root weight needs alpha, beta >= 0 and alpha + beta >= 1");
    if (!(reference.lo < reference.hi)) throw DomainError("jacobi_root weight: degenerate reference hull");
    return {WeightKind::JacobiRoot, alpha, beta, reference};
}

std::pair<int, int> WeightSpec::exponents() const {
    switch (kind) {
        case WeightKind::Unit: return {0, 0};
        case WeightKind::SqrtOnePlus: return {0, 1};
        case WeightKind::SqrtOneMinus: return {1, 0};
        case WeightKind::SqrtOneMinusSq: return {1, 1};
        case WeightKind::JacobiRoot: return {alpha, beta};
    }
    return {0, 0};
}

Poly WeightSpec::squared() const {
    const Band d = domain();
    // T(x) = (2x - lo - hi) / (hi - lo)
    const Poly t({-(d.lo + d.hi) / (d.hi - d.lo), 2.0 / (d.hi - d.lo)});
    const Poly one = Poly::constant(1.0);
    auto [a, b] = exponents();
    Poly out = one;
    for (int i = 0; i < a; ++i) out = out * (one - t);
    for (int i = 0; i < b; ++i) out = out * (one + t);
    return out;
}

std::string WeightSpec::name() const {
    switch (kind) {
        case WeightKind::Unit: return "unit";
        case WeightKind::SqrtOnePlus: return "sqrt_one_plus";
        case WeightKind::SqrtOneMinus: return "sqrt_one_minus";
        case WeightKind::SqrtOneMinusSq: return "sqrt_one_minus_sq";
        case WeightKind::JacobiRoot: return "jacobi_root";
    }
    return "?";
}

void check_weight_domain(const IntervalSet& set, const WeightSpec& w) {
    if (w.kind == WeightKind::Unit) return;
    if (w.kind == WeightKind::JacobiRoot && (w.alpha < 0 || w.beta < 0 || w.alpha + w.beta < 1)) {
        throw DomainError("jacobi_root weight needs alpha, beta >= 0 and alpha + beta >= 1");
    }
    const Band d = w.domain();
    const double slack = 1e-12 * d.length();
    const Band h = set.hull();
    if (h.lo < d.lo - slack || h.hi > d.hi + slack) {
        throw DomainError("weight " + w.name() + " requires the set inside [" + std::to_string(d.lo) + ", " +
                          std::to_string(d.hi) + "]");
    }
}

}  // namespace widom

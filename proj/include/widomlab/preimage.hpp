#pragma once

#include <optional>
#include <string>
#include <vector>

#include "widomlab/chebyshev.hpp"
#include "widomlab/error.hpp"
#include "widomlab/interval_set.hpp"
#include "widomlab/orthopoly.hpp"
#include "widomlab/polynomial.hpp"
#include "widomlab/sublevel.hpp"
#include "widomlab/weight.hpp"

namespace widom {

enum class PreimageVariant { OnePlus, OneMinus, OneMinusSq };

std::string to_string(PreimageVariant v);
/// "one_plus", "one_minus", "one_minus_sq".
std::optional<PreimageVariant> parse_variant(const std::string& name);

/// K = {x : Q(x) in [0, 1]} with Q = F * S^2 and F one of 1 + x, 1 - x, 1 - x^2.
struct PreimageSpec {
    PreimageVariant variant = PreimageVariant::OnePlus;
    /// S in ascending powers, degree n >= 1.
    std::vector<double> s_coeffs;

    Poly s() const;
    Poly form() const;
    Poly q() const;
    int degree() const;
    /// deg Q: 2n + 1, or 2n + 2 for OneMinusSq.
    int top_degree() const;
    double leading() const;
    /// sqrt(F): the weight whose Chebyshev polynomial is S / c.
    WeightSpec weight() const;
    /// F d mu_K.
    JacobiSpec measure() const;
    /// S with exact coefficients when each coefficient is a short decimal.
    std::optional<RationalPoly> exact_s() const;
    /// Throws DomainError on an empty or non-finite S or zero leading term.
    void validate() const;
};

struct CriticalVerdict {
    double x;
    double value;
    bool admissible;
};

struct Admissibility {
    bool admissible = false;
    std::vector<CriticalVerdict> critical;
    int complex_critical = 0;
    bool s_roots_real = false;
    int full_branches = 0;
    bool inside_unit = false;
    /// Empty when admissible, otherwise the first violated condition.
    std::string reason;
};

/// Thrown by build_set and the functions built on it for inadmissible specs.
class InadmissibleSpec : public DomainError {
public:
    InadmissibleSpec(const std::string& what, Admissibility report)
        : DomainError(what), report_(std::move(report)) {}
    const Admissibility& report() const noexcept { return report_; }

private:
    Admissibility report_;
};

struct PreimageSet {
    IntervalSet set;
    Admissibility report;
    /// Monotone branches of Q over [0, 1], in order.
    std::vector<Band> branches;
};

/// Critical-value analysis only; never throws for a valid spec.
Admissibility check_admissibility(const PreimageSpec& spec, double touch_tol = 1e-10);

/// Assembles K and its branches; throws InadmissibleSpec naming the violation.
PreimageSet build_set(const PreimageSpec& spec, double root_tol = 1e-12);

struct ExactOracle {
    /// Cap^N = 1 / (4 c^2), N = deg Q.
    double cap_power = 0.0;
    std::optional<Rational> cap_power_exact;
    double capacity = 0.0;
    double log_capacity = 0.0;
    /// Monic Chebyshev polynomial of degree N on K (unit weight).
    Poly chebyshev_top;
    std::optional<RationalPoly> chebyshev_top_exact;
    /// Norm of chebyshev_top: 2 Cap^N.
    double top_norm = 0.0;
    /// ||w S / c||_K = 1 / |c|.
    double t_exact = 0.0;
    /// W_inf,n: 2 sqrt(Cap), or 2 Cap for OneMinusSq.
    double widom_inf = 0.0;
    /// S(mu) and [W_2,n]^2 = 2 S(mu) for the matching measure.
    double entropy = 0.0;
    double widom2_sq = 0.0;
    /// S / c.
    Poly chebyshev;
    std::optional<RationalPoly> chebyshev_exact;
};

/// Closed-form values; throws InadmissibleSpec.
ExactOracle exact_invariants(const PreimageSpec& spec);

struct Clause {
    char id;
    std::string name;
    bool pass;
    /// Observed value minus the equality value (largest coefficient deviation for polynomials).
    double deviation;
};

struct SaturationReport {
    std::vector<Clause> clauses;
    double capacity = 0.0;
    double widom_inf = 0.0;
    double widom_bound = 0.0;
    double widom2_sq = 0.0;
    double two_s = 0.0;

    bool passed() const;
    const Clause* find(char id) const;
};

/// Clauses (a)-(e): capacity, sup-norm equality, L2 equality, P_n = S/c = T_{n,w},
/// and the top-degree Chebyshev polynomial.
SaturationReport saturation_verify(const PreimageSpec& spec, double tol = 1e-8);

/// Clauses (b) and (c) for an arbitrary set, against its numerical capacity
/// and entropy. Used for sets that are not preimages.
SaturationReport equality_check(const IntervalSet& set, const WeightSpec& weight, int n, double tol = 1e-8);

struct AffineInstance {
    Band target;
    IntervalSet set;
    JacobiSpec measure;
    WeightSpec weight;
    /// (1/c) ((b - a)/2)^n S(T(x)).
    Poly orthogonal;
    std::optional<RationalPoly> orthogonal_exact;
};

/// The preimage problem carried to `target` by the increasing affine map of [-1, 1].
AffineInstance affine_instance(const PreimageSpec& spec, Band target);

}  // namespace widom

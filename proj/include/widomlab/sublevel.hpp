#pragma once

#include <vector>

#include "widomlab/interval_set.hpp"
#include "widomlab/polynomial.hpp"

namespace widom {

struct CriticalPoint {
    double x;
    double value;
};

/// Real set {x : lo <= Q(x) <= hi} of a real polynomial, assembled from its
/// monotone branches.
struct Sublevel {
    std::vector<Band> bands;
    /// Pieces of monotone branches of Q that lie in the set, in order. When Q
    /// maps a branch onto all of [lo, hi] the piece is `full`.
    std::vector<Band> branches;
    std::vector<bool> full;
    std::vector<CriticalPoint> critical;
    /// Critical points of Q off the real axis.
    int complex_critical = 0;

    int full_branch_count() const;
};

/// `critical_factors` multiply to Q' up to a constant; splitting known factors
/// (such as S in (1+x) S^2) keeps multiple critical points away from the
/// companion solver. Critical values within touch_tol * (hi - lo) of lo or hi
/// are treated as touching exactly.
Sublevel sublevel_set(const Poly& q, double lo, double hi, const std::vector<Poly>& critical_factors,
                      double touch_tol = 1e-10);

Sublevel sublevel_set(const Poly& q, double lo, double hi, double touch_tol = 1e-10);

}  // namespace widom

#pragma once

#include <functional>
#include <string>
#include <vector>

#include "widomlab/interval_set.hpp"
#include "widomlab/preimage.hpp"
#include "widomlab/weight.hpp"

namespace widom::verify {

/// A set that is not a polynomial preimage, with the weight under which the
/// equality checks must fail.
struct NegativeControl {
    std::string name;
    IntervalSet set;
    WeightSpec weight;
    int degree;
};

struct CatalogEntry {
    std::string name;
    PreimageSpec spec;
};

/// Admissible preimage specs used by the saturation and affine criteria.
const std::vector<CatalogEntry>& preimage_catalog();
const std::vector<NegativeControl>& negative_controls();

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = true;
    int checks = 0;
    int failures = 0;
    /// First failing check, if any.
    std::string detail;
    double seconds = 0.0;
};

constexpr int kCriterionCount = 9;

/// Runs one criterion (1..9).
CriterionResult run_criterion(int id);

/// Runs all criteria in order; `on_result` sees each result as it finishes.
std::vector<CriterionResult> run_acceptance(const std::function<void(const CriterionResult&)>& on_result = {});

/// "PASS [3] exact preimage identities (12 checks, 0.04 s)" and similar.
std::string format_result(const CriterionResult& r);

}  // namespace widom::verify

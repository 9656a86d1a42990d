#include "widomlab/interval_set.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "widomlab/error.hpp"

namespace widom {

bool IntervalSet::contains(double x) const { return band_of(x) >= 0; }

int IntervalSet::band_of(double x) const {
    auto it = std::upper_bound(bands_.begin(), bands_.end(), x, [](double v, const Band& b) { return v < b.lo; });
    if (it == bands_.begin()) return -1;
    --it;
    return it->contains(x) ? static_cast<int>(it - bands_.begin()) : -1;
}

double IntervalSet::distance(double x) const {
    double d = HUGE_VAL;
    for (const Band& b : bands_) {
        if (b.contains(x)) return 0.0;
        d = std::min({d, std::abs(x - b.lo), std::abs(x - b.hi)});
    }
    return d;
}

IntervalSet normalize(std::span<const std::pair<double, double>> raw, double merge_tol) {
    if (raw.empty()) throw DomainError("interval set: no intervals given");
    std::vector<Band> sorted;
    sorted.reserve(raw.size());
    for (auto [a, b] : raw) {
        if (!std::isfinite(a) || !std::isfinite(b)) throw DomainError("interval set: non-finite endpoint");
        if (a == b) {
            std::ostringstream os;
            os << "interval set: degenerate interval [" << a << ", " << b << "]";
            throw DomainError(os.str());
        }
        sorted.push_back({std::min(a, b), std::max(a, b)});
    }
    std::sort(sorted.begin(), sorted.end(), [](const Band& x, const Band& y) { return x.lo < y.lo; });

    IntervalSet out;
    for (const Band& b : sorted) {
        if (!out.bands_.empty() && b.lo <= out.bands_.back().hi + merge_tol) {
            out.bands_.back().hi = std::max(out.bands_.back().hi, b.hi);
        } else {
            out.bands_.push_back(b);
        }
    }
    for (const Band& b : out.bands_) {
        if (!(b.lo < b.hi)) throw DomainError("interval set: degenerate component after merging");
    }
    return out;
}

IntervalSet normalize(std::initializer_list<std::pair<double, double>> raw, double merge_tol) {
    return normalize(std::span<const std::pair<double, double>>(raw.begin(), raw.size()), merge_tol);
}

IntervalSet normalize(std::span<const Band> raw, double merge_tol) {
    std::vector<std::pair<double, double>> pairs;
    pairs.reserve(raw.size());
    for (const Band& b : raw) pairs.emplace_back(b.lo, b.hi);
    return normalize(pairs, merge_tol);
}

std::vector<Gap> gaps(const IntervalSet& set) {
    std::vector<Gap> out;
    const auto& b = set.bands();
    for (std::size_t j = 0; j + 1 < b.size(); ++j) out.push_back({b[j].hi, b[j + 1].lo, static_cast<int>(j)});
    return out;
}

IntervalSet affine_map(const IntervalSet& set, Band source_hull, Band target_hull) {
    if (!(source_hull.lo < source_hull.hi) || !(target_hull.lo < target_hull.hi)) {
        throw DomainError("affine_map: degenerate hull");
    }
    const double scale = target_hull.length() / source_hull.length();
    std::vector<std::pair<double, double>> mapped;
    for (const Band& b : set.bands()) {
        mapped.emplace_back(target_hull.lo + scale * (b.lo - source_hull.lo),
                            target_hull.lo + scale * (b.hi - source_hull.lo));
    }
    // merge_tol 0: mapping must not fuse bands
    return normalize(mapped, 0.0);
}

IntervalSet reflect(const IntervalSet& set) {
    std::vector<std::pair<double, double>> mapped;
    for (const Band& b : set.bands()) mapped.emplace_back(-b.hi, -b.lo);
    return normalize(mapped, 0.0);
}

}  // namespace widom

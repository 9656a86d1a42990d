#pragma once

#include <span>
#include <utility>
#include <vector>

namespace widom {

struct Band {
    double lo;
    double hi;

    double length() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    double half() const { return 0.5 * (hi - lo); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    friend bool operator==(const Band&, const Band&) = default;
};

/// Open bounded component of hull \ K, between band `index` and `index + 1`.
struct Gap {
    double left;
    double right;
    int index;
};

/// A compact subset of the real line given as finitely many sorted, disjoint,
/// nondegenerate closed intervals. Construct through normalize().
class IntervalSet {
public:
    const std::vector<Band>& bands() const { return bands_; }
    std::size_t band_count() const { return bands_.size(); }
    Band hull() const { return {bands_.front().lo, bands_.back().hi}; }

    bool contains(double x) const;
    /// Index of the band containing x, or -1.
    int band_of(double x) const;
    /// Distance from x to the set (0 inside).
    double distance(double x) const;

    friend bool operator==(const IntervalSet&, const IntervalSet&) = default;

private:
    friend IntervalSet normalize(std::span<const std::pair<double, double>>, double);
    std::vector<Band> bands_;
};

/// Sorts the pairs, orients each (lo, hi), and merges intervals that overlap
/// or lie within merge_tol of each other. Throws DomainError on empty input or
/// a degenerate pair.
IntervalSet normalize(std::span<const std::pair<double, double>> raw, double merge_tol = 1e-12);
IntervalSet normalize(std::initializer_list<std::pair<double, double>> raw, double merge_tol = 1e-12);
IntervalSet normalize(std::span<const Band> raw, double merge_tol = 1e-12);

std::vector<Gap> gaps(const IntervalSet& set);

/// Image of the set under the increasing affine map sending source hull onto
/// target hull.
IntervalSet affine_map(const IntervalSet& set, Band source_hull, Band target_hull);

/// Image under x -> -x.
IntervalSet reflect(const IntervalSet& set);

}  // namespace widom

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "widomlab/cli/config.hpp"

namespace widom::cli {

/// One degree. Columns a subcommand does not compute stay empty.
struct Row {
    int n = 0;
    std::optional<double> t_n;
    std::optional<double> widom_inf;
    std::optional<double> lower;
    std::optional<double> upper;
    std::optional<double> norm2;
    std::optional<double> widom2_sq;
    std::optional<double> two_s;
    std::optional<bool> eq_sup;
    std::optional<bool> eq_l2;
    /// A bound column is violated beyond the verify tolerance.
    bool failed = false;
    /// Remez iterations (0 when no Remez run).
    int iterations = 0;

    friend bool operator==(const Row&, const Row&) = default;
};

/// A named pass/fail line of a verification run.
struct Check {
    std::string name;
    bool pass = true;
    std::optional<double> deviation;
    std::string detail;

    friend bool operator==(const Check&, const Check&) = default;
};

struct Report {
    std::string subcommand;
    std::string config_hash;
    Tolerances tolerances;
    int quadrature_points = 0;

    std::vector<std::pair<double, double>> bands;
    std::string weight;
    std::optional<JacobiSpec> measure;

    std::optional<double> capacity;
    std::optional<double> log_capacity;
    std::optional<double> pw_sum;
    std::vector<double> gap_zeros;
    std::vector<double> band_masses;
    std::vector<double> critical_values;
    /// (x, g_K(x)) pairs.
    std::vector<std::pair<double, double>> green;

    std::vector<Row> rows;
    std::vector<Check> checks;
    bool passed = true;
};

bool operator==(const Report& a, const Report& b);

/// Curves for the svg plot; not part of the serialized report.
struct Plot {
    Band hull{-1.0, 1.0};
    std::vector<std::pair<double, double>> green;
    /// w p sampled over the hull and its norm t_n; empty when no polynomial.
    std::vector<std::pair<double, double>> polynomial;
    double envelope = 0.0;
    int degree = 0;
    std::vector<double> alternation_points;
    std::vector<Band> bands;
};

/// Fixed CSV header: n, t_n, widom_inf, lower, upper, norm2, widom2_sq, two_S, eq_sup, eq_l2.
extern const char* const kCsvHeader;

std::string emit_text(const Report& r);
/// The degree table when the report has rows, otherwise a quantity,value table.
std::string emit_csv(const Report& r);
std::string emit_json(const Report& r);
std::string emit(const Report& r, Format f);
std::string emit_svg(const Plot& p);

/// Inverse of emit_json; throws ConfigError with the offending field.
Report read_report(const std::string& json_text);

}  // namespace widom::cli

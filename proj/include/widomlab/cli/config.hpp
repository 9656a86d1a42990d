#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "widomlab/interval_set.hpp"
#include "widomlab/orthopoly.hpp"
#include "widomlab/preimage.hpp"
#include "widomlab/weight.hpp"

namespace widom::cli {

enum class Format { Text, Csv, Json };

std::string to_string(Format f);
std::optional<Format> parse_format(const std::string& s);

/// Where the set comes from. Affine sets map a base (bands or preimage) from
/// source_hull onto target_hull.
struct SetSpec {
    enum class Kind { Bands, Preimage, Affine };
    Kind kind = Kind::Bands;
    std::vector<std::pair<double, double>> bands;
    std::optional<PreimageSpec> preimage;
    Band source_hull{-1.0, 1.0};
    Band target_hull{-1.0, 1.0};
};

struct Tolerances {
    double remez = 1e-12;
    double mass = 1e-10;
    double verify = 1e-7;
};

struct OutputSpec {
    Format format = Format::Text;
    std::string svg;
    std::string path;
};

struct JobConfig {
    SetSpec set;
    WeightSpec weight;
    JacobiSpec measure;
    std::vector<int> degrees{1};
    Tolerances tolerances;
    OutputSpec output;
    /// Evaluation points for the green subcommand; empty means a default grid.
    std::vector<double> points;
};

/// Parse or validation failure. `where` is "line N" for syntax errors and the
/// field path (with its line when it can be located) for everything else.
class ConfigError : public std::runtime_error {
public:
    ConfigError(const std::string& where, const std::string& message)
        : std::runtime_error(where + ": " + message), where_(where) {}
    const std::string& where() const noexcept { return where_; }

private:
    std::string where_;
};

/// JSON config text to a validated JobConfig. Unknown fields are errors.
JobConfig parse_config(const std::string& text);

/// Canonical JSON with every field present; parse_config(serialize_config(c))
/// reproduces c.
std::string serialize_config(const JobConfig& config);

/// FNV-1a 64 of the canonical serialization, as 16 hex digits.
std::string config_hash(const JobConfig& config);

/// The set described by the config (built, mapped and normalized).
IntervalSet resolve_set(const SetSpec& spec);

}  // namespace widom::cli

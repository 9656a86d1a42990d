#pragma once

#include <string>

#include <json.hpp>

namespace widom::cli {

/// Pretty JSON with every float written with 17 significant digits. Arrays of
/// scalars stay on one line.
std::string dump_json(const nlohmann::ordered_json& value);

/// %.17g, the float format used by every emitter.
std::string format_double(double x);

}  // namespace widom::cli

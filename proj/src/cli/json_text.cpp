#include "widomlab/cli/json_text.hpp"

#include <cmath>
#include <cstdio>

namespace widom::cli {

std::string format_double(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

namespace {

bool is_scalar(const nlohmann::ordered_json& v) { return !v.is_array() && !v.is_object(); }

void write(const nlohmann::ordered_json& v, int depth, std::string& out) {
    const std::string pad(static_cast<std::size_t>(2 * depth), ' ');
    const std::string inner(static_cast<std::size_t>(2 * (depth + 1)), ' ');
    if (v.is_number_float()) {
        const double x = v.get<double>();
        // JSON has no literal for these
        out += std::isfinite(x) ? format_double(x) : "null";
    } else if (v.is_object()) {
        if (v.empty()) {
            out += "{}";
            return;
        }
        out += "{\n";
        bool first = true;
        for (const auto& item : v.items()) {
            if (!first) out += ",\n";
            first = false;
            out += inner + nlohmann::ordered_json(item.key()).dump() + ": ";
            write(item.value(), depth + 1, out);
        }
        out += "\n" + pad + "}";
    } else if (v.is_array()) {
        if (v.empty()) {
            out += "[]";
            return;
        }
        bool flat = true;
        for (const auto& e : v) flat = flat && is_scalar(e);
        if (flat) {
            out += "[";
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ", ";
                write(v[i], depth + 1, out);
            }
            out += "]";
            return;
        }
        out += "[\n";
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) out += ",\n";
            out += inner;
            write(v[i], depth + 1, out);
        }
        out += "\n" + pad + "]";
    } else {
        out += v.dump();
    }
}

}  // namespace

std::string dump_json(const nlohmann::ordered_json& value) {
    std::string out;
    write(value, 0, out);
    return out;
}

}  // namespace widom::cli

#include "widomlab/cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <regex>
#include <set>

#include <json.hpp>

#include "widomlab/cli/json_text.hpp"
#include "widomlab/error.hpp"

namespace widom::cli {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(Format f) {
    switch (f) {
        case Format::Text: return "text";
        case Format::Csv: return "csv";
        case Format::Json: return "json";
    }
    return "text";
}

std::optional<Format> parse_format(const std::string& s) {
    if (s == "text") return Format::Text;
    if (s == "csv") return Format::Csv;
    if (s == "json") return Format::Json;
    return std::nullopt;
}

namespace {

int line_at(const std::string& text, std::size_t offset) {
    offset = std::min(offset, text.size());
    return 1 + static_cast<int>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(offset), '\n'));
}

/// Best-effort source line of a dotted field path: each key is searched for
/// after the previous one.
std::optional<int> line_of(const std::string& text, const std::string& path) {
    std::size_t pos = 0;
    bool found = false;
    std::size_t start = 0;
    while (start <= path.size()) {
        std::size_t end = path.find('.', start);
        if (end == std::string::npos) end = path.size();
        std::string key = path.substr(start, end - start);
        key = key.substr(0, key.find('['));
        if (!key.empty()) {
            const std::size_t hit = text.find("\"" + key + "\"", pos);
            if (hit == std::string::npos) break;
            pos = hit;
            found = true;
        }
        start = end + 1;
    }
    if (!found) return std::nullopt;
    return line_at(text, pos);
}

class Reader {
public:
    explicit Reader(const std::string& text) : text_(text) {}

    [[noreturn]] void fail(const std::string& path, const std::string& message) const {
        std::string where = "field " + path;
        if (auto line = line_of(text_, path)) where += " (line " + std::to_string(*line) + ")";
        throw ConfigError(where, message);
    }

    void object(const json& v, const std::string& path, std::initializer_list<const char*> allowed) const {
        if (!v.is_object()) fail(path, "expected an object");
        for (const auto& item : v.items()) {
            const bool known = std::any_of(allowed.begin(), allowed.end(),
                                           [&](const char* k) { return item.key() == k; });
            if (!known) fail(join(path, item.key()), "unknown field");
        }
    }

    double number(const json& v, const std::string& path) const {
        if (!v.is_number()) fail(path, "expected a number");
        const double x = v.get<double>();
        if (!std::isfinite(x)) fail(path, "expected a finite number");
        return x;
    }

    double positive(const json& v, const std::string& path) const {
        const double x = number(v, path);
        if (!(x > 0.0)) fail(path, "must be positive");
        return x;
    }

    int integer(const json& v, const std::string& path, int lo, int hi) const {
        if (!v.is_number_integer()) fail(path, "expected an integer");
        const auto x = v.get<long long>();
        if (x < lo || x > hi) {
            fail(path, "must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
        }
        return static_cast<int>(x);
    }

    std::string string(const json& v, const std::string& path) const {
        if (!v.is_string()) fail(path, "expected a string");
        return v.get<std::string>();
    }

    Band pair(const json& v, const std::string& path) const {
        if (!v.is_array() || v.size() != 2) fail(path, "expected a pair [lo, hi]");
        Band b{number(v[0], path + "[0]"), number(v[1], path + "[1]")};
        if (!(b.lo < b.hi)) fail(path, "needs lo < hi");
        return b;
    }

    static std::string join(const std::string& path, const std::string& key) {
        return path.empty() ? key : path + "." + key;
    }

private:
    const std::string& text_;
};

constexpr int kMaxDegree = 100;

std::vector<std::pair<double, double>> read_bands(const Reader& r, const json& v, const std::string& path) {
    if (!v.is_array() || v.empty()) r.fail(path, "expected a nonempty list of [lo, hi] pairs");
    std::vector<std::pair<double, double>> raw;
    for (std::size_t i = 0; i < v.size(); ++i) {
        const std::string at = path + "[" + std::to_string(i) + "]";
        if (!v[i].is_array() || v[i].size() != 2) r.fail(at, "expected a pair [lo, hi]");
        const double a = r.number(v[i][0], at + "[0]");
        const double b = r.number(v[i][1], at + "[1]");
        if (a == b) r.fail(at, "degenerate interval");
        raw.emplace_back(a, b);
    }
    try {
        IntervalSet s = normalize(raw);
        std::vector<std::pair<double, double>> out;
        for (const Band& b : s.bands()) out.emplace_back(b.lo, b.hi);
        return out;
    } catch (const DomainError& e) {
        r.fail(path, e.what());
    }
}

PreimageSpec read_preimage(const Reader& r, const json& v, const std::string& path) {
    r.object(v, path, {"variant", "coeffs"});
    if (!v.contains("variant")) r.fail(Reader::join(path, "variant"), "missing");
    if (!v.contains("coeffs")) r.fail(Reader::join(path, "coeffs"), "missing");
    const std::string name = r.string(v["variant"], Reader::join(path, "variant"));
    auto variant = parse_variant(name);
    if (!variant) r.fail(Reader::join(path, "variant"), "unknown variant '" + name + "' (one_plus, one_minus, one_minus_sq)");
    PreimageSpec spec;
    spec.variant = *variant;
    const json& c = v["coeffs"];
    const std::string cpath = Reader::join(path, "coeffs");
    if (!c.is_array() || c.size() < 2) r.fail(cpath, "expected at least two coefficients (ascending powers)");
    for (std::size_t i = 0; i < c.size(); ++i) spec.s_coeffs.push_back(r.number(c[i], cpath + "[" + std::to_string(i) + "]"));
    try {
        spec.validate();
    } catch (const DomainError& e) {
        r.fail(cpath, e.what());
    }
    return spec;
}

SetSpec read_set(const Reader& r, const json& v) {
    r.object(v, "set", {"bands", "preimage", "affine"});
    if (v.size() != 1) r.fail("set", "exactly one of bands, preimage, affine is required");
    SetSpec s;
    if (v.contains("bands")) {
        s.kind = SetSpec::Kind::Bands;
        s.bands = read_bands(r, v["bands"], "set.bands");
    } else if (v.contains("preimage")) {
        s.kind = SetSpec::Kind::Preimage;
        s.preimage = read_preimage(r, v["preimage"], "set.preimage");
    } else {
        const json& a = v["affine"];
        r.object(a, "set.affine", {"bands", "preimage", "source_hull", "target_hull"});
        s.kind = SetSpec::Kind::Affine;
        const bool has_bands = a.contains("bands");
        if (has_bands == a.contains("preimage")) r.fail("set.affine", "exactly one of bands, preimage is required");
        if (has_bands) {
            s.bands = read_bands(r, a["bands"], "set.affine.bands");
        } else {
            s.preimage = read_preimage(r, a["preimage"], "set.affine.preimage");
        }
        if (a.contains("source_hull")) s.source_hull = r.pair(a["source_hull"], "set.affine.source_hull");
        if (!a.contains("target_hull")) r.fail("set.affine.target_hull", "missing");
        s.target_hull = r.pair(a["target_hull"], "set.affine.target_hull");
    }
    return s;
}

Band map_band(Band b, Band from, Band to) {
    const double s = to.length() / from.length();
    return {to.lo + (b.lo - from.lo) * s, to.lo + (b.hi - from.lo) * s};
}

WeightSpec default_weight(const SetSpec& s) {
    if (!s.preimage) return WeightSpec::unit();
    const WeightSpec w = s.preimage->weight();
    if (s.kind != SetSpec::Kind::Affine) return w;
    auto [alpha, beta] = w.exponents();
    return WeightSpec::jacobi_root(alpha, beta, map_band({-1.0, 1.0}, s.source_hull, s.target_hull));
}

WeightSpec read_weight(const Reader& r, const json& v) {
    r.object(v, "weight", {"variant", "alpha", "beta", "reference_hull"});
    if (!v.contains("variant")) r.fail("weight.variant", "missing");
    const std::string name = r.string(v["variant"], "weight.variant");
    const bool jacobi = name == "jacobi_root";
    if (!jacobi) {
        for (const char* k : {"alpha", "beta", "reference_hull"}) {
            if (v.contains(k)) r.fail(std::string("weight.") + k, "only valid for variant jacobi_root");
        }
    }
    if (name == "unit") return WeightSpec::unit();
    if (name == "sqrt_one_plus") return WeightSpec::sqrt_one_plus();
    if (name == "sqrt_one_minus") return WeightSpec::sqrt_one_minus();
    if (name == "sqrt_one_minus_sq") return WeightSpec::sqrt_one_minus_sq();
    if (!jacobi) {
        r.fail("weight.variant",
               "unknown variant '" + name + "' (unit, sqrt_one_plus, sqrt_one_minus, sqrt_one_minus_sq, jacobi_root)");
    }
    if (!v.contains("alpha")) r.fail("weight.alpha", "missing");
    if (!v.contains("beta")) r.fail("weight.beta", "missing");
    const int alpha = r.integer(v["alpha"], "weight.alpha", 0, 16);
    const int beta = r.integer(v["beta"], "weight.beta", 0, 16);
    const Band ref = v.contains("reference_hull") ? r.pair(v["reference_hull"], "weight.reference_hull") : Band{-1.0, 1.0};
    try {
        return WeightSpec::jacobi_root(alpha, beta, ref);
    } catch (const DomainError& e) {
        r.fail("weight", e.what());
    }
}

JacobiSpec read_measure(const Reader& r, const json& v) {
    r.object(v, "measure", {"alpha", "beta", "reference_hull"});
    JacobiSpec m;
    if (v.contains("alpha")) m.alpha = r.integer(v["alpha"], "measure.alpha", 0, 16);
    if (v.contains("beta")) m.beta = r.integer(v["beta"], "measure.beta", 0, 16);
    if (v.contains("reference_hull")) m.reference = r.pair(v["reference_hull"], "measure.reference_hull");
    return m;
}

std::vector<int> read_degrees(const Reader& r, const json& v) {
    std::vector<int> out;
    if (v.is_string()) {
        static const std::regex range(R"(^\s*(\d+)\s*\.\.\s*(\d+)\s*$)");
        std::smatch m;
        const std::string s = v.get<std::string>();
        if (!std::regex_match(s, m, range)) r.fail("degrees", "expected a list of integers or a range \"a..b\"");
        const long lo = std::stol(m[1].str());
        const long hi = std::stol(m[2].str());
        if (lo < 1 || hi > kMaxDegree || lo > hi) {
            r.fail("degrees", "range must satisfy 1 <= a <= b <= " + std::to_string(kMaxDegree));
        }
        for (long n = lo; n <= hi; ++n) out.push_back(static_cast<int>(n));
        return out;
    }
    if (v.is_number_integer()) return {r.integer(v, "degrees", 1, kMaxDegree)};
    if (!v.is_array() || v.empty()) r.fail("degrees", "expected a nonempty list of integers or a range \"a..b\"");
    for (std::size_t i = 0; i < v.size(); ++i) {
        out.push_back(r.integer(v[i], "degrees[" + std::to_string(i) + "]", 1, kMaxDegree));
    }
    std::sort(out.begin(), out.end());
    if (std::adjacent_find(out.begin(), out.end()) != out.end()) r.fail("degrees", "duplicate degree");
    return out;
}

Tolerances read_tolerances(const Reader& r, const json& v) {
    r.object(v, "tolerances", {"remez", "mass", "verify"});
    Tolerances t;
    if (v.contains("remez")) t.remez = r.positive(v["remez"], "tolerances.remez");
    if (v.contains("mass")) t.mass = r.positive(v["mass"], "tolerances.mass");
    if (v.contains("verify")) t.verify = r.positive(v["verify"], "tolerances.verify");
    return t;
}

OutputSpec read_output(const Reader& r, const json& v) {
    r.object(v, "output", {"format", "svg", "path"});
    OutputSpec o;
    if (v.contains("format")) {
        const std::string f = r.string(v["format"], "output.format");
        auto parsed = parse_format(f);
        if (!parsed) r.fail("output.format", "unknown format '" + f + "' (text, csv, json)");
        o.format = *parsed;
    }
    if (v.contains("svg")) o.svg = r.string(v["svg"], "output.svg");
    if (v.contains("path")) o.path = r.string(v["path"], "output.path");
    return o;
}

json parse_json(const std::string& text) {
    std::vector<std::set<std::string>> keys;
    std::string duplicate;
    json::parser_callback_t cb = [&](int, json::parse_event_t ev, json& parsed) {
        if (ev == json::parse_event_t::object_start) {
            keys.emplace_back();
        } else if (ev == json::parse_event_t::object_end) {
            keys.pop_back();
        } else if (ev == json::parse_event_t::key && duplicate.empty()) {
            const auto k = parsed.get<std::string>();
            if (!keys.back().insert(k).second) duplicate = k;
        }
        return true;
    };
    try {
        json v = json::parse(text, cb, true, true);
        if (!duplicate.empty()) throw ConfigError("field " + duplicate, "duplicate key");
        return v;
    } catch (const json::parse_error& e) {
        const std::size_t at = e.byte == 0 ? 0 : e.byte - 1;
        std::string msg = e.what();
        const auto colon = msg.find(": ");
        if (colon != std::string::npos) msg = msg.substr(colon + 2);
        throw ConfigError("line " + std::to_string(line_at(text, at)), msg);
    }
}

ordered_json pair_json(Band b) { return ordered_json::array({b.lo, b.hi}); }

ordered_json bands_json(const std::vector<std::pair<double, double>>& bands) {
    ordered_json a = ordered_json::array();
    for (auto [lo, hi] : bands) a.push_back(ordered_json::array({lo, hi}));
    return a;
}

ordered_json preimage_json(const PreimageSpec& p) {
    ordered_json o;
    o["variant"] = to_string(p.variant);
    o["coeffs"] = p.s_coeffs;
    return o;
}

}  // namespace

JobConfig parse_config(const std::string& text) {
    const json root = parse_json(text);
    const Reader r(text);
    r.object(root, "", {"set", "weight", "measure", "degrees", "tolerances", "output", "points"});
    if (!root.contains("set")) r.fail("set", "missing");

    JobConfig c;
    c.set = read_set(r, root["set"]);
    c.weight = root.contains("weight") ? read_weight(r, root["weight"]) : default_weight(c.set);
    c.measure = root.contains("measure") ? read_measure(r, root["measure"]) : JacobiSpec::from_weight(c.weight);
    if (root.contains("degrees")) {
        c.degrees = read_degrees(r, root["degrees"]);
    } else if (c.set.preimage) {
        c.degrees = {c.set.preimage->degree()};
    }
    if (root.contains("tolerances")) c.tolerances = read_tolerances(r, root["tolerances"]);
    if (root.contains("output")) c.output = read_output(r, root["output"]);
    if (root.contains("points")) {
        const json& p = root["points"];
        if (!p.is_array()) r.fail("points", "expected a list of numbers");
        for (std::size_t i = 0; i < p.size(); ++i) c.points.push_back(r.number(p[i], "points[" + std::to_string(i) + "]"));
    }
    return c;
}

namespace {

ordered_json config_json(const JobConfig& c) {
    ordered_json root;
    ordered_json set;
    switch (c.set.kind) {
        case SetSpec::Kind::Bands: set["bands"] = bands_json(c.set.bands); break;
        case SetSpec::Kind::Preimage: set["preimage"] = preimage_json(*c.set.preimage); break;
        case SetSpec::Kind::Affine: {
            ordered_json a;
            if (c.set.preimage) {
                a["preimage"] = preimage_json(*c.set.preimage);
            } else {
                a["bands"] = bands_json(c.set.bands);
            }
            a["source_hull"] = pair_json(c.set.source_hull);
            a["target_hull"] = pair_json(c.set.target_hull);
            set["affine"] = a;
            break;
        }
    }
    root["set"] = set;

    ordered_json w;
    w["variant"] = c.weight.name();
    if (c.weight.kind == WeightKind::JacobiRoot) {
        w["alpha"] = c.weight.alpha;
        w["beta"] = c.weight.beta;
        w["reference_hull"] = pair_json(c.weight.reference);
    }
    root["weight"] = w;

    ordered_json m;
    m["alpha"] = c.measure.alpha;
    m["beta"] = c.measure.beta;
    m["reference_hull"] = pair_json(c.measure.reference);
    root["measure"] = m;

    root["degrees"] = c.degrees;

    ordered_json t;
    t["remez"] = c.tolerances.remez;
    t["mass"] = c.tolerances.mass;
    t["verify"] = c.tolerances.verify;
    root["tolerances"] = t;

    ordered_json o;
    o["format"] = to_string(c.output.format);
    o["svg"] = c.output.svg;
    o["path"] = c.output.path;
    root["output"] = o;

    root["points"] = c.points;
    return root;
}

}  // namespace

std::string serialize_config(const JobConfig& config) { return dump_json(config_json(config)) + "\n"; }

std::string config_hash(const JobConfig& config) {
    // output settings do not change the computation
    JobConfig job = config;
    job.output = OutputSpec{};
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : serialize_config(job)) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

IntervalSet resolve_set(const SetSpec& spec) {
    IntervalSet base = spec.preimage ? build_set(*spec.preimage).set : normalize(spec.bands);
    if (spec.kind != SetSpec::Kind::Affine) return base;
    return affine_map(base, spec.source_hull, spec.target_hull);
}

}  // namespace widom::cli

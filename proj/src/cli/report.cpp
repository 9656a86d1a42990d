#include "widomlab/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include <json.hpp>

#include "widomlab/cli/json_text.hpp"

namespace widom::cli {

using nlohmann::json;
using nlohmann::ordered_json;

const char* const kCsvHeader = "n,t_n,widom_inf,lower,upper,norm2,widom2_sq,two_S,eq_sup,eq_l2";

bool operator==(const Report& a, const Report& b) {
    auto same_measure = [](const std::optional<JacobiSpec>& x, const std::optional<JacobiSpec>& y) {
        if (x.has_value() != y.has_value()) return false;
        return !x || (x->alpha == y->alpha && x->beta == y->beta && x->reference == y->reference);
    };
    return a.subcommand == b.subcommand && a.config_hash == b.config_hash &&
           a.tolerances.remez == b.tolerances.remez && a.tolerances.mass == b.tolerances.mass &&
           a.tolerances.verify == b.tolerances.verify && a.quadrature_points == b.quadrature_points &&
           a.bands == b.bands && a.weight == b.weight && same_measure(a.measure, b.measure) &&
           a.capacity == b.capacity && a.log_capacity == b.log_capacity && a.pw_sum == b.pw_sum &&
           a.gap_zeros == b.gap_zeros && a.band_masses == b.band_masses && a.critical_values == b.critical_values &&
           a.green == b.green && a.rows == b.rows && a.checks == b.checks && a.passed == b.passed;
}

namespace {

std::string opt(const std::optional<double>& v, const char* empty = "") {
    return v ? format_double(*v) : std::string(empty);
}

std::string opt(const std::optional<bool>& v, const char* empty = "") {
    return v ? (*v ? "true" : "false") : std::string(empty);
}

std::string list(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) out += (i ? " " : "") + format_double(xs[i]);
    return out;
}

ordered_json value(const std::optional<double>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }
ordered_json value(const std::optional<bool>& v) { return v ? ordered_json(*v) : ordered_json(nullptr); }

std::string pad_right(std::string s, std::size_t width) {
    if (s.size() < width) s.append(width - s.size(), ' ');
    return s;
}

}  // namespace

std::string emit_text(const Report& r) {
    std::string out;
    out += "widomlab " + r.subcommand + "\n";
    out += "config hash  " + r.config_hash + "\n";
    out += "tolerances   remez " + format_double(r.tolerances.remez) + ", mass " + format_double(r.tolerances.mass) +
           ", verify " + format_double(r.tolerances.verify) + "\n";
    if (!r.bands.empty()) {
        out += "set         ";
        for (auto [lo, hi] : r.bands) out += " [" + format_double(lo) + ", " + format_double(hi) + "]";
        out += "\n";
    }
    if (!r.weight.empty()) out += "weight       " + r.weight + "\n";
    if (r.measure) {
        out += "measure      alpha " + std::to_string(r.measure->alpha) + ", beta " + std::to_string(r.measure->beta) +
               ", reference [" + format_double(r.measure->reference.lo) + ", " +
               format_double(r.measure->reference.hi) + "]\n";
    }
    if (r.quadrature_points) out += "quadrature   " + std::to_string(r.quadrature_points) + " points per band\n";
    if (r.capacity) out += "capacity     " + format_double(*r.capacity) + "\n";
    if (r.log_capacity) out += "log capacity " + format_double(*r.log_capacity) + "\n";
    if (!r.gap_zeros.empty()) out += "gap zeros    " + list(r.gap_zeros) + "\n";
    if (!r.band_masses.empty()) out += "band masses  " + list(r.band_masses) + "\n";
    if (!r.critical_values.empty()) out += "green at gap critical points " + list(r.critical_values) + "\n";
    if (r.pw_sum) out += "PW sum       " + format_double(*r.pw_sum) + "\n";
    if (!r.green.empty()) {
        out += "\n" + pad_right("x", 26) + "g(x)\n";
        for (auto [x, g] : r.green) out += pad_right(format_double(x), 26) + format_double(g) + "\n";
    }
    if (!r.rows.empty()) {
        const char* names[] = {"n", "t_n", "widom_inf", "lower", "upper", "norm2", "widom2_sq", "two_S", "eq_sup", "eq_l2"};
        const std::size_t widths[] = {4, 25, 25, 25, 25, 25, 25, 25, 7, 7};
        out += "\n";
        for (std::size_t i = 0; i < 10; ++i) out += pad_right(names[i], widths[i]);
        out += "\n";
        for (const Row& row : r.rows) {
            const std::string cells[] = {std::to_string(row.n), opt(row.t_n, "-"), opt(row.widom_inf, "-"),
                                         opt(row.lower, "-"), opt(row.upper, "-"), opt(row.norm2, "-"),
                                         opt(row.widom2_sq, "-"), opt(row.two_s, "-"), opt(row.eq_sup, "-"),
                                         opt(row.eq_l2, "-")};
            for (std::size_t i = 0; i < 10; ++i) out += pad_right(cells[i], widths[i]);
            if (row.failed) out += "FAILED";
            out += "\n";
        }
        bool any_iterations = std::any_of(r.rows.begin(), r.rows.end(), [](const Row& x) { return x.iterations > 0; });
        if (any_iterations) {
            out += "remez iterations";
            for (const Row& row : r.rows) out += " " + std::to_string(row.iterations);
            out += "\n";
        }
    }
    if (!r.checks.empty()) {
        out += "\n";
        for (const Check& c : r.checks) {
            out += std::string(c.pass ? "PASS " : "FAIL ") + c.name;
            if (c.deviation) out += " (deviation " + format_double(*c.deviation) + ")";
            if (!c.detail.empty()) out += ": " + c.detail;
            out += "\n";
        }
    }
    out += std::string("\nresult       ") + (r.passed ? "ok" : "FAILED") + "\n";
    return out;
}

std::string emit_csv(const Report& r) {
    std::string out;
    if (!r.rows.empty()) {
        out += std::string(kCsvHeader) + "\n";
        for (const Row& row : r.rows) {
            out += std::to_string(row.n) + "," + opt(row.t_n) + "," + opt(row.widom_inf) + "," + opt(row.lower) + "," +
                   opt(row.upper) + "," + opt(row.norm2) + "," + opt(row.widom2_sq) + "," + opt(row.two_s) + "," +
                   opt(row.eq_sup) + "," + opt(row.eq_l2) + "\n";
        }
        return out;
    }
    out += "quantity,value\n";
    auto put = [&](const std::string& k, const std::string& v) { out += k + "," + v + "\n"; };
    if (r.capacity) put("capacity", format_double(*r.capacity));
    if (r.log_capacity) put("log_capacity", format_double(*r.log_capacity));
    for (std::size_t i = 0; i < r.gap_zeros.size(); ++i) put("gap_zero_" + std::to_string(i), format_double(r.gap_zeros[i]));
    for (std::size_t i = 0; i < r.band_masses.size(); ++i) {
        put("band_mass_" + std::to_string(i), format_double(r.band_masses[i]));
    }
    for (std::size_t i = 0; i < r.critical_values.size(); ++i) {
        put("critical_value_" + std::to_string(i), format_double(r.critical_values[i]));
    }
    if (r.pw_sum) put("pw_sum", format_double(*r.pw_sum));
    for (auto [x, g] : r.green) put("green(" + format_double(x) + ")", format_double(g));
    for (const Check& c : r.checks) put("check " + c.name, c.pass ? "pass" : "fail");
    return out;
}

std::string emit_json(const Report& r) {
    ordered_json root;
    root["subcommand"] = r.subcommand;
    ordered_json prov;
    prov["config_hash"] = r.config_hash;
    prov["tolerances"] = {{"remez", r.tolerances.remez}, {"mass", r.tolerances.mass}, {"verify", r.tolerances.verify}};
    prov["quadrature_points"] = r.quadrature_points;
    ordered_json iters = ordered_json::array();
    for (const Row& row : r.rows) iters.push_back(row.iterations);
    prov["iterations"] = iters;
    root["provenance"] = prov;

    ordered_json bands = ordered_json::array();
    for (auto [lo, hi] : r.bands) bands.push_back(ordered_json::array({lo, hi}));
    root["bands"] = bands;
    root["weight"] = r.weight;
    if (r.measure) {
        root["measure"] = {{"alpha", r.measure->alpha},
                           {"beta", r.measure->beta},
                           {"reference_hull", ordered_json::array({r.measure->reference.lo, r.measure->reference.hi})}};
    } else {
        root["measure"] = nullptr;
    }
    root["capacity"] = value(r.capacity);
    root["log_capacity"] = value(r.log_capacity);
    root["pw_sum"] = value(r.pw_sum);
    root["gap_zeros"] = r.gap_zeros;
    root["band_masses"] = r.band_masses;
    root["critical_values"] = r.critical_values;
    ordered_json green = ordered_json::array();
    for (auto [x, g] : r.green) green.push_back(ordered_json::array({x, g}));
    root["green"] = green;

    ordered_json rows = ordered_json::array();
    for (const Row& row : r.rows) {
        ordered_json o;
        o["n"] = row.n;
        o["t_n"] = value(row.t_n);
        o["widom_inf"] = value(row.widom_inf);
        o["lower"] = value(row.lower);
        o["upper"] = value(row.upper);
        o["norm2"] = value(row.norm2);
        o["widom2_sq"] = value(row.widom2_sq);
        o["two_S"] = value(row.two_s);
        o["eq_sup"] = value(row.eq_sup);
        o["eq_l2"] = value(row.eq_l2);
        o["failed"] = row.failed;
        rows.push_back(o);
    }
    root["rows"] = rows;

    ordered_json checks = ordered_json::array();
    for (const Check& c : r.checks) {
        ordered_json o;
        o["name"] = c.name;
        o["pass"] = c.pass;
        o["deviation"] = value(c.deviation);
        o["detail"] = c.detail;
        checks.push_back(o);
    }
    root["checks"] = checks;
    root["passed"] = r.passed;
    return dump_json(root) + "\n";
}

std::string emit(const Report& r, Format f) {
    switch (f) {
        case Format::Text: return emit_text(r);
        case Format::Csv: return emit_csv(r);
        case Format::Json: return emit_json(r);
    }
    return emit_text(r);
}

namespace {

struct Canvas {
    double x0, y0, w, h;
    double xmin, xmax, ymin, ymax;

    double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
    double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string polyline(const Canvas& c, const std::vector<std::pair<double, double>>& pts, const char* colour) {
    std::string s = "<polyline fill=\"none\" stroke=\"" + std::string(colour) + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        s += (i ? " " : "") + num(c.px(pts[i].first)) + "," + num(c.py(pts[i].second));
    }
    return s + "\"/>\n";
}

std::string hline(const Canvas& c, double y, const char* colour, const char* dash) {
    return "<line x1=\"" + num(c.x0) + "\" y1=\"" + num(c.py(y)) + "\" x2=\"" + num(c.x0 + c.w) + "\" y2=\"" +
           num(c.py(y)) + "\" stroke=\"" + colour + "\" stroke-dasharray=\"" + dash + "\"/>\n";
}

std::string label(double x, double y, const std::string& text) {
    return "<text x=\"" + num(x) + "\" y=\"" + num(y) + "\" font-family=\"monospace\" font-size=\"12\">" + text +
           "</text>\n";
}

std::pair<double, double> y_range(const std::vector<std::pair<double, double>>& pts, double lo, double hi) {
    for (auto [x, y] : pts) {
        lo = std::min(lo, y);
        hi = std::max(hi, y);
    }
    if (hi - lo < 1e-12) hi = lo + 1.0;
    const double pad = 0.05 * (hi - lo);
    return {lo - pad, hi + pad};
}

}  // namespace

std::string emit_svg(const Plot& p) {
    const double width = 720, panel = 260, margin = 50;
    const bool has_poly = !p.polynomial.empty();
    const double height = has_poly ? 2 * panel + 3 * margin : panel + 2 * margin;
    std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
                    "\" viewBox=\"0 0 " + num(width) + " " + num(height) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";

    double xmin = p.hull.lo, xmax = p.hull.hi;
    for (auto [x, y] : p.green) {
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
    }
    auto [gy0, gy1] = y_range(p.green, 0.0, 0.0);
    const Canvas g{margin, margin, width - 2 * margin, panel, xmin, xmax, gy0, gy1};
    s += "<rect x=\"" + num(g.x0) + "\" y=\"" + num(g.y0) + "\" width=\"" + num(g.w) + "\" height=\"" + num(g.h) +
         "\" fill=\"none\" stroke=\"#888\"/>\n";
    for (const Band& b : p.bands) {
        s += "<line x1=\"" + num(g.px(b.lo)) + "\" y1=\"" + num(g.py(0.0)) + "\" x2=\"" + num(g.px(b.hi)) + "\" y2=\"" +
             num(g.py(0.0)) + "\" stroke=\"black\" stroke-width=\"4\"/>\n";
    }
    s += polyline(g, p.green, "#1f77b4");
    s += label(g.x0, g.y0 - 10, "Green function g(x) over the hull");

    if (has_poly) {
        auto [py0, py1] = y_range(p.polynomial, -p.envelope, p.envelope);
        const Canvas c{margin, 2 * margin + panel, width - 2 * margin, panel, p.hull.lo, p.hull.hi, py0, py1};
        s += "<rect x=\"" + num(c.x0) + "\" y=\"" + num(c.y0) + "\" width=\"" + num(c.w) + "\" height=\"" + num(c.h) +
             "\" fill=\"none\" stroke=\"#888\"/>\n";
        s += hline(c, p.envelope, "#d62728", "6,4");
        s += hline(c, -p.envelope, "#d62728", "6,4");
        s += hline(c, 0.0, "#bbb", "2,2");
        s += polyline(c, p.polynomial, "#2ca02c");
        for (double x : p.alternation_points) {
            double y = 0.0;
            double best = std::numeric_limits<double>::infinity();
            for (auto [px, pv] : p.polynomial) {
                if (std::abs(px - x) < best) {
                    best = std::abs(px - x);
                    y = pv;
                }
            }
            const double yy = y >= 0 ? p.envelope : -p.envelope;
            s += "<circle cx=\"" + num(c.px(x)) + "\" cy=\"" + num(c.py(yy)) + "\" r=\"3\" fill=\"#d62728\"/>\n";
        }
        s += label(c.x0, c.y0 - 10,
                   "w(x) p(x), degree " + std::to_string(p.degree) + ", envelope +-" + format_double(p.envelope));
    }
    s += "</svg>\n";
    return s;
}

namespace {

class ReportReader {
public:
    [[noreturn]] static void fail(const std::string& path, const std::string& msg) {
        throw ConfigError("field " + path, msg);
    }

    static const json& at(const json& o, const std::string& key, const std::string& path) {
        if (!o.is_object() || !o.contains(key)) fail(path.empty() ? key : path + "." + key, "missing");
        return o.at(key);
    }

    static double number(const json& v, const std::string& path) {
        if (!v.is_number()) fail(path, "expected a number");
        return v.get<double>();
    }

    static std::optional<double> maybe_number(const json& v, const std::string& path) {
        if (v.is_null()) return std::nullopt;
        return number(v, path);
    }

    static std::optional<bool> maybe_bool(const json& v, const std::string& path) {
        if (v.is_null()) return std::nullopt;
        return boolean(v, path);
    }

    static bool boolean(const json& v, const std::string& path) {
        if (!v.is_boolean()) fail(path, "expected true or false");
        return v.get<bool>();
    }

    static std::string string(const json& v, const std::string& path) {
        if (!v.is_string()) fail(path, "expected a string");
        return v.get<std::string>();
    }

    static int integer(const json& v, const std::string& path) {
        if (!v.is_number_integer()) fail(path, "expected an integer");
        return v.get<int>();
    }

    static std::vector<double> numbers(const json& v, const std::string& path) {
        if (!v.is_array()) fail(path, "expected a list");
        std::vector<double> out;
        for (std::size_t i = 0; i < v.size(); ++i) out.push_back(number(v[i], path + "[" + std::to_string(i) + "]"));
        return out;
    }

    static std::vector<std::pair<double, double>> pairs(const json& v, const std::string& path) {
        if (!v.is_array()) fail(path, "expected a list");
        std::vector<std::pair<double, double>> out;
        for (std::size_t i = 0; i < v.size(); ++i) {
            const std::string p = path + "[" + std::to_string(i) + "]";
            if (!v[i].is_array() || v[i].size() != 2) fail(p, "expected a pair");
            out.emplace_back(number(v[i][0], p), number(v[i][1], p));
        }
        return out;
    }
};

}  // namespace

Report read_report(const std::string& json_text) {
    using R = ReportReader;
    json root;
    try {
        root = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw ConfigError("report", std::string("syntax error: ") + e.what());
    }
    Report r;
    r.subcommand = R::string(R::at(root, "subcommand", ""), "subcommand");
    const json& prov = R::at(root, "provenance", "");
    r.config_hash = R::string(R::at(prov, "config_hash", "provenance"), "provenance.config_hash");
    const json& tol = R::at(prov, "tolerances", "provenance");
    r.tolerances.remez = R::number(R::at(tol, "remez", "provenance.tolerances"), "provenance.tolerances.remez");
    r.tolerances.mass = R::number(R::at(tol, "mass", "provenance.tolerances"), "provenance.tolerances.mass");
    r.tolerances.verify = R::number(R::at(tol, "verify", "provenance.tolerances"), "provenance.tolerances.verify");
    r.quadrature_points = R::integer(R::at(prov, "quadrature_points", "provenance"), "provenance.quadrature_points");
    const json& iters = R::at(prov, "iterations", "provenance");

    r.bands = R::pairs(R::at(root, "bands", ""), "bands");
    r.weight = R::string(R::at(root, "weight", ""), "weight");
    const json& m = R::at(root, "measure", "");
    if (!m.is_null()) {
        JacobiSpec spec;
        spec.alpha = R::integer(R::at(m, "alpha", "measure"), "measure.alpha");
        spec.beta = R::integer(R::at(m, "beta", "measure"), "measure.beta");
        const auto ref = R::numbers(R::at(m, "reference_hull", "measure"), "measure.reference_hull");
        if (ref.size() != 2) R::fail("measure.reference_hull", "expected a pair");
        spec.reference = {ref[0], ref[1]};
        r.measure = spec;
    }
    r.capacity = R::maybe_number(R::at(root, "capacity", ""), "capacity");
    r.log_capacity = R::maybe_number(R::at(root, "log_capacity", ""), "log_capacity");
    r.pw_sum = R::maybe_number(R::at(root, "pw_sum", ""), "pw_sum");
    r.gap_zeros = R::numbers(R::at(root, "gap_zeros", ""), "gap_zeros");
    r.band_masses = R::numbers(R::at(root, "band_masses", ""), "band_masses");
    r.critical_values = R::numbers(R::at(root, "critical_values", ""), "critical_values");
    r.green = R::pairs(R::at(root, "green", ""), "green");

    const json& rows = R::at(root, "rows", "");
    if (!rows.is_array()) R::fail("rows", "expected a list");
    if (!iters.is_array() || iters.size() != rows.size()) R::fail("provenance.iterations", "one count per row expected");
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const std::string p = "rows[" + std::to_string(i) + "]";
        const json& o = rows[i];
        Row row;
        row.n = R::integer(R::at(o, "n", p), p + ".n");
        row.t_n = R::maybe_number(R::at(o, "t_n", p), p + ".t_n");
        row.widom_inf = R::maybe_number(R::at(o, "widom_inf", p), p + ".widom_inf");
        row.lower = R::maybe_number(R::at(o, "lower", p), p + ".lower");
        row.upper = R::maybe_number(R::at(o, "upper", p), p + ".upper");
        row.norm2 = R::maybe_number(R::at(o, "norm2", p), p + ".norm2");
        row.widom2_sq = R::maybe_number(R::at(o, "widom2_sq", p), p + ".widom2_sq");
        row.two_s = R::maybe_number(R::at(o, "two_S", p), p + ".two_S");
        row.eq_sup = R::maybe_bool(R::at(o, "eq_sup", p), p + ".eq_sup");
        row.eq_l2 = R::maybe_bool(R::at(o, "eq_l2", p), p + ".eq_l2");
        row.failed = R::boolean(R::at(o, "failed", p), p + ".failed");
        row.iterations = R::integer(iters[i], "provenance.iterations[" + std::to_string(i) + "]");
        r.rows.push_back(row);
    }
    const json& checks = R::at(root, "checks", "");
    if (!checks.is_array()) R::fail("checks", "expected a list");
    for (std::size_t i = 0; i < checks.size(); ++i) {
        const std::string p = "checks[" + std::to_string(i) + "]";
        Check c;
        c.name = R::string(R::at(checks[i], "name", p), p + ".name");
        c.pass = R::boolean(R::at(checks[i], "pass", p), p + ".pass");
        c.deviation = R::maybe_number(R::at(checks[i], "deviation", p), p + ".deviation");
        c.detail = R::string(R::at(checks[i], "detail", p), p + ".detail");
        r.checks.push_back(c);
    }
    r.passed = R::boolean(R::at(root, "passed", ""), "passed");
    return r;
}

}  // namespace widom::cli

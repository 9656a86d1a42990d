#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "widomlab/cli/config.hpp"
#include "widomlab/cli/report.hpp"
#include "widomlab/cli/run.hpp"

using namespace widom;
using namespace widom::cli;

namespace {

std::string where_of(const std::string& text) {
    try {
        parse_config(text);
    } catch (const ConfigError& e) {
        return e.where();
    }
    return "";
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

struct TempDir {
    std::filesystem::path path;
    TempDir() {
        path = std::filesystem::temp_directory_path() / ("widomlab_cli_" + std::to_string(::getpid()));
        std::filesystem::create_directories(path);
    }
    ~TempDir() { std::filesystem::remove_all(path); }

    std::string write(const std::string& name, const std::string& text) const {
        const auto p = path / name;
        std::ofstream(p) << text;
        return p.string();
    }
    std::string read(const std::string& name) const {
        std::ifstream in(path / name);
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }
};

int call(std::vector<std::string> args) {
    args.insert(args.begin(), "widomlab");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return main_entry(static_cast<int>(argv.size()), argv.data());
}

const char* kCheb = R"({
  // closed form on [-1, 1]
  "set": {"bands": [[-1, 1]]},
  "weight": {"variant": "sqrt_one_plus"},
  "degrees": "1..8"
})";

}  // namespace

TEST_CASE("config round trip is idempotent") {
    const std::vector<std::string> texts = {
        kCheb,
        R"({"set": {"bands": [[0.5, 1], [-1, -0.5]]}})",
        R"({"set": {"preimage": {"variant": "one_minus_sq", "coeffs": [-2, 0, 8]}}, "degrees": [2, 1]})",
        R"({"set": {"affine": {"preimage": {"variant": "one_plus", "coeffs": [0, 3]}, "target_hull": [0, 4]}},
            "tolerances": {"verify": 1e-9}, "output": {"format": "csv", "svg": "p.svg"}})",
        R"({"set": {"affine": {"bands": [[-1, 0.2]], "source_hull": [-1, 1], "target_hull": [3, 7]}},
            "weight": {"variant": "jacobi_root", "alpha": 1, "beta": 2, "reference_hull": [3, 7]},
            "measure": {"alpha": 2, "beta": 0, "reference_hull": [3, 7]}, "points": [0.1, 2.5]})",
    };
    for (const auto& text : texts) {
        const std::string once = serialize_config(parse_config(text));
        const std::string twice = serialize_config(parse_config(once));
        CHECK(once == twice);
        CHECK(config_hash(parse_config(once)) == config_hash(parse_config(text)));
    }
}

TEST_CASE("config defaults follow the set") {
    const auto pre = parse_config(R"({"set": {"preimage": {"variant": "one_minus", "coeffs": [-1, 2, 4]}}})");
    CHECK(pre.weight.kind == WeightKind::SqrtOneMinus);
    CHECK(pre.measure.alpha == 1);
    CHECK(pre.measure.beta == 0);
    CHECK(pre.degrees == std::vector<int>{2});

    const auto aff = parse_config(
        R"({"set": {"affine": {"preimage": {"variant": "one_plus", "coeffs": [0, 3]}, "target_hull": [0, 4]}}})");
    CHECK(aff.weight.kind == WeightKind::JacobiRoot);
    CHECK(aff.weight.reference == Band{0.0, 4.0});

    const auto bands = parse_config(R"({"set": {"bands": [[-1, 1]]}, "degrees": "2..4"})");
    CHECK(bands.weight.kind == WeightKind::Unit);
    CHECK(bands.degrees == std::vector<int>{2, 3, 4});
}

TEST_CASE("config diagnostics name the field and line") {
    CHECK(where_of("{\"set\": {\"bands\": [[-1, 1]]},\n \"wieght\": {}}") == "field wieght (line 2)");
    CHECK(where_of("{\"set\": {\"bands\": [[-1, 1]]},\n \"weight\": {\n \"variant\": \"sqrt_one_plus\",\n \"beta\": 1}}") ==
          "field weight.beta (line 4)");
    CHECK(where_of("{\"set\": {\"bands\": [[-1, 1]]},\n\n \"degrees\": [1,,2]}") == "line 3");
    CHECK(where_of(R"({"set": {"bands": [[-1, 1]], "preimage": {}}})").rfind("field set", 0) == 0);
    CHECK(where_of(R"({"degrees": [1]})").rfind("field set", 0) == 0);
    CHECK(where_of(R"({"set": {"bands": [[-1, 1]]}, "degrees": [0]})").rfind("field degrees[0]", 0) == 0);
    CHECK(where_of(R"({"set": {"bands": [[-1, 1]]}, "degrees": [2, 2]})").rfind("field degrees", 0) == 0);
    CHECK(where_of(R"({"set": {"bands": [[-1, 1]]}, "tolerances": {"remez": -1}})").rfind("field tolerances.remez", 0) == 0);
    CHECK(where_of(R"({"set": {"bands": [[1, 1]]}})").rfind("field set.bands[0]", 0) == 0);
    CHECK(where_of(R"({"set": {"bands": [[-1, 1]]}, "set": {"bands": [[0, 1]]}})") == "field set");
    CHECK(where_of(R"({"set": {"preimage": {"variant": "one_plus", "coeffs": [1, 0]}}})").rfind("field set.preimage.coeffs", 0) == 0);
    CHECK(where_of(R"({"set": {"bands": [[-1, 1]]}, "output": {"format": "xml"}})").rfind("field output.format", 0) == 0);
    CHECK(where_of(R"({"set": {"bands": [[-1, 1]]}, "weight": {"variant": "jacobi_root", "alpha": 0, "beta": 0}})")
              .rfind("field weight", 0) == 0);
}

TEST_CASE("chebyshev on [-1, 1] with sqrt(1 + x) gives Widom factor sqrt 2") {
    const auto result = run(parse_config(kCheb), Subcommand::Chebyshev);
    REQUIRE(result.report.rows.size() == 8);
    for (const Row& row : result.report.rows) {
        CHECK(std::abs(*row.widom_inf - std::sqrt(2.0)) <= 1e-8);
        CHECK(row.eq_sup == true);
        CHECK(!row.failed);
    }
    CHECK(result.status == exit_code::ok);
}

TEST_CASE("capacity of the symmetric two-band set") {
    const auto result = run(parse_config(R"({"set": {"bands": [[-1, -0.5], [0.5, 1]]}})"), Subcommand::Capacity);
    CHECK(std::abs(*result.report.capacity - std::sqrt(0.75) / 2.0) <= 1e-9);
    CHECK(std::abs(*result.report.capacity - 0.4330127) <= 1e-7);
}

TEST_CASE("verify on the (1 + x)(3x)^2 preimage passes every clause") {
    const auto result =
        run(parse_config(R"({"set": {"preimage": {"variant": "one_plus", "coeffs": [0, 3]}}})"), Subcommand::Verify);
    CHECK(result.status == exit_code::ok);
    CHECK(result.report.checks.size() >= 5);
    for (const Check& c : result.report.checks) CHECK_MESSAGE(c.pass, c.name);
}

TEST_CASE("verify on a mapped preimage") {
    const auto result = run(parse_config(R"({"set": {"affine": {"preimage": {"variant": "one_minus", "coeffs": [0, 3]},
                                             "target_hull": [3, 7]}}})"),
                            Subcommand::Verify);
    CHECK(result.status == exit_code::ok);
    for (const Check& c : result.report.checks) CHECK_MESSAGE(c.pass, c.name);
}

TEST_CASE("preimage subcommand reports admissibility and exact capacity") {
    const auto result =
        run(parse_config(R"({"set": {"preimage": {"variant": "one_plus", "coeffs": [0, 3]}}})"), Subcommand::Preimage);
    CHECK(result.status == exit_code::ok);
    CHECK(std::abs(*result.report.capacity - std::pow(36.0, -1.0 / 3.0)) <= 1e-9);
    CHECK(result.report.bands.size() == 2);
}

TEST_CASE("csv has a fixed header and one line per degree, and is deterministic") {
    const auto config = parse_config(R"({"set": {"bands": [[-1, -0.2], [0.3, 1]]},
        "weight": {"variant": "sqrt_one_plus"}, "degrees": [1, 2, 3]})");
    const std::string a = emit_csv(run(config, Subcommand::Chebyshev).report);
    const std::string b = emit_csv(run(config, Subcommand::Chebyshev).report);
    CHECK(a == b);
    const auto ls = lines(a);
    REQUIRE(ls.size() == 4);
    CHECK(ls[0] == "n,t_n,widom_inf,lower,upper,norm2,widom2_sq,two_S,eq_sup,eq_l2");
    CHECK(ls[1].rfind("1,", 0) == 0);
}

TEST_CASE("json report round trips through the reader") {
    const auto config = parse_config(R"({"set": {"preimage": {"variant": "one_minus_sq", "coeffs": [0, 2]}},
        "degrees": [1, 2]})");
    for (auto sub : {Subcommand::Verify, Subcommand::Equilibrium, Subcommand::Green}) {
        const Report r = run(config, sub).report;
        const std::string text = emit_json(r);
        const Report back = read_report(text);
        CHECK(back == r);
        CHECK(emit_json(back) == text);
    }
}

TEST_CASE("report reader names missing fields") {
    try {
        read_report(R"({"subcommand": "capacity"})");
        FAIL("expected an error");
    } catch (const ConfigError& e) {
        CHECK(e.where() == "field provenance");
    }
}

TEST_CASE("failed rows are marked") {
    Report r;
    r.subcommand = "chebyshev";
    Row row;
    row.n = 3;
    row.widom_inf = 1.0;
    row.lower = 2.0;
    row.failed = true;
    r.rows.push_back(row);
    r.passed = false;
    CHECK(emit_text(r).find("FAILED") != std::string::npos);
    CHECK(read_report(emit_json(r)).rows.front().failed);
}

TEST_CASE("svg output is deterministic") {
    const auto config = parse_config(kCheb);
    const std::string a = emit_svg(run(config, Subcommand::Chebyshev).plot);
    const std::string b = emit_svg(run(config, Subcommand::Chebyshev).plot);
    CHECK(a == b);
    CHECK(a.rfind("<svg", 0) == 0);
    CHECK(a.find("<polyline") != std::string::npos);
    CHECK(a.find("<circle") != std::string::npos);
}

TEST_CASE("command line exit codes and outputs") {
    TempDir dir;
    const std::string cheb = dir.write("cheb.json", kCheb);
    const std::string out = (dir.path / "out.csv").string();
    const std::string svg = (dir.path / "plot.svg").string();
    CHECK(call({"chebyshev", "--config", cheb, "--format", "csv", "--out", out, "--svg", svg}) == exit_code::ok);
    CHECK(lines(dir.read("out.csv")).size() == 9);
    CHECK(dir.read("plot.svg").find("</svg>") != std::string::npos);

    const std::string bad = dir.write("bad.json", R"({"set": {"bands": [[-1, 1]]}, "colour": "red"})");
    CHECK(call({"capacity", "--config", bad}) == exit_code::config);
    CHECK(call({"capacity", "--config", (dir.path / "missing.json").string()}) == exit_code::config);
    CHECK(call({"capacity"}) == exit_code::config);
    CHECK(call({"chebyshev", "--config", cheb, "--format", "xml"}) == exit_code::config);

    const std::string outside = dir.write("outside.json", R"({"set": {"bands": [[-2, 1]]}, "weight": {"variant": "sqrt_one_plus"}})");
    CHECK(call({"chebyshev", "--config", outside}) == exit_code::config);

    const std::string inadmissible =
        dir.write("inadmissible.json", R"({"set": {"preimage": {"variant": "one_plus", "coeffs": [0.5, 1]}}})");
    CHECK(call({"verify", "--config", inadmissible}) == exit_code::config);

    const std::string mass = dir.write("mass.json", R"({"set": {"bands": [[-1, -0.5], [0.5, 1]]}, "tolerances": {"mass": 1e-300}})");
    CHECK(call({"capacity", "--config", mass}) == exit_code::numerical);

    const std::string pre = dir.write("pre.json", R"({"set": {"preimage": {"variant": "one_plus", "coeffs": [0, 3]}}})");
    CHECK(call({"verify", "--config", pre, "--out", (dir.path / "v.json").string(), "--format", "json"}) == exit_code::ok);
    CHECK(read_report(dir.read("v.json")).passed);
}

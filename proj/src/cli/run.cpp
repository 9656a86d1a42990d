#include "widomlab/cli/run.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "widomlab/chebyshev.hpp"
#include "widomlab/cli/json_text.hpp"
#include "widomlab/error.hpp"
#include "widomlab/orthopoly.hpp"
#include "widomlab/potential.hpp"
#include "widomlab/preimage.hpp"
#include "widomlab/verify/acceptance.hpp"

namespace widom::cli {

std::string to_string(Subcommand s) {
    switch (s) {
        case Subcommand::Capacity: return "capacity";
        case Subcommand::Equilibrium: return "equilibrium";
        case Subcommand::Green: return "green";
        case Subcommand::Chebyshev: return "chebyshev";
        case Subcommand::Orthopoly: return "orthopoly";
        case Subcommand::Preimage: return "preimage";
        case Subcommand::Verify: return "verify";
    }
    return "?";
}

std::optional<Subcommand> parse_subcommand(const std::string& name) {
    for (auto s : {Subcommand::Capacity, Subcommand::Equilibrium, Subcommand::Green, Subcommand::Chebyshev,
                   Subcommand::Orthopoly, Subcommand::Preimage, Subcommand::Verify}) {
        if (to_string(s) == name) return s;
    }
    return std::nullopt;
}

namespace {

constexpr Band kUnit{-1.0, 1.0};

bool near_set(const IntervalSet& set, double x) { return set.distance(x) <= 1e-12; }

double rel_gap(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

/// Sup-norm bounds in the coordinate where the weight's domain is [-1, 1].
struct SupShape {
    std::optional<double> lower;
    std::optional<double> upper;
    /// Value of W_inf in the equality case.
    std::optional<double> equality;
};

SupShape sup_shape(const IntervalSet& set, const EquilibriumData& eq, const WeightSpec& w, const Tolerances& tol) {
    const Band d = w.domain();
    const double cap = eq.capacity() * 2.0 / d.length();
    auto [alpha, beta] = w.exponents();
    SupShape s;
    if (alpha + beta == 1) {
        const bool plus = beta == 1;
        const WeightSpec shape = plus ? WeightSpec::sqrt_one_plus() : WeightSpec::sqrt_one_minus();
        const SupBounds b = d == kUnit ? sup_bounds(eq, shape)
                                       : sup_bounds(equilibrium(affine_map(set, d, kUnit), 64, tol.mass), shape);
        s.lower = b.lower;
        s.upper = b.upper;
        s.equality = b.lower;
    } else if (alpha == 1 && beta == 1) {
        s.equality = 2.0 * cap;
    } else if (alpha == 0 && beta == 0) {
        // classical lower bound for real sets, attained exactly on polynomial preimages
        s.lower = 2.0;
        s.equality = 2.0;
    }
    return s;
}

template <class F>
auto with_context(const std::string& where, F&& f) {
    try {
        return f();
    } catch (const NumericalError& e) {
        throw NumericalError(where + ": " + e.what(), e.residual());
    } catch (const ConfigError&) {
        throw;
    } catch (const DomainError& e) {
        throw DomainError(where + ": " + e.what());
    }
}

struct Job {
    const JobConfig& config;
    IntervalSet set;
    EquilibriumData eq;
};

Job prepare(const JobConfig& c) {
    IntervalSet set = with_context("set", [&] { return resolve_set(c.set); });
    EquilibriumData eq = with_context("mass tolerance " + format_double(c.tolerances.mass),
                                        [&] { return equilibrium(set, 64, c.tolerances.mass); });
    return {c, std::move(set), std::move(eq)};
}

void describe(Report& r, const Job& job) {
    r.config_hash = config_hash(job.config);
    r.tolerances = job.config.tolerances;
    r.quadrature_points = job.eq.points_per_band();
    for (const Band& b : job.set.bands()) r.bands.emplace_back(b.lo, b.hi);
    r.capacity = job.eq.capacity();
    r.log_capacity = job.eq.log_capacity();
}

/// Fills the sup-norm columns; returns the last solution for the plot.
std::optional<ChebyshevSolution> sup_rows(const Job& job, std::vector<Row>& rows, Report& r) {
    const JobConfig& c = job.config;
    r.weight = c.weight.name();
    with_context("weight " + c.weight.name(), [&] {
        check_weight_domain(job.set, c.weight);
        return 0;
    });
    const SupShape shape = with_context("bounds", [&] { return sup_shape(job.set, job.eq, c.weight, c.tolerances); });

    std::vector<std::future<ChebyshevSolution>> work;
    for (int n : c.degrees) {
        work.push_back(std::async(std::launch::async, [&, n] {
            return with_context("chebyshev degree " + std::to_string(n),
                                      [&] { return remez(job.eq, c.weight, n, c.tolerances.remez); });
        }));
    }
    std::optional<ChebyshevSolution> last;
    const double tol = c.tolerances.verify;
    for (std::size_t i = 0; i < work.size(); ++i) {
        ChebyshevSolution sol = work[i].get();
        Row& row = rows[i];
        row.t_n = sol.norm;
        row.widom_inf = sol.widom_inf;
        row.lower = shape.lower;
        row.upper = shape.upper;
        row.iterations = sol.iterations;
        if (shape.equality) row.eq_sup = rel_gap(sol.widom_inf, *shape.equality) <= tol;
        if (shape.lower && sol.widom_inf < *shape.lower - tol) row.failed = true;
        if (shape.upper && sol.widom_inf > *shape.upper + tol) row.failed = true;
        last = std::move(sol);
    }
    return last;
}

void l2_rows(const Job& job, std::vector<Row>& rows, Report& r) {
    const JobConfig& c = job.config;
    const JacobiSpec& mu = c.measure;
    r.measure = mu;
    with_context("measure", [&] {
        if (mu.alpha + mu.beta > 0) check_weight_domain(job.set, WeightSpec::jacobi_root(mu.alpha, mu.beta, mu.reference));
        return 0;
    });
    const int top = *std::max_element(c.degrees.begin(), c.degrees.end());
    const OrthoData od = with_context("orthopoly", [&] { return stieltjes(job.eq, mu, top); });
    const double s = od.entropy;
    // the doubled bound needs both reference endpoints in the set
    const bool improved =
        mu.alpha + mu.beta >= 1 && near_set(job.set, mu.reference.lo) && near_set(job.set, mu.reference.hi);
    const double tol = c.tolerances.verify;
    for (std::size_t i = 0; i < c.degrees.size(); ++i) {
        const auto n = static_cast<std::size_t>(c.degrees[i]);
        Row& row = rows[i];
        row.norm2 = od.norms[n];
        row.widom2_sq = od.widom2_sq[n];
        row.two_s = 2.0 * s;
        row.eq_l2 = rel_gap(od.widom2_sq[n], 2.0 * s) <= tol;
        if (od.widom2_sq[n] < s - tol) row.failed = true;
        if (improved && od.widom2_sq[n] < 2.0 * s - tol) row.failed = true;
    }
}

std::vector<Row> empty_rows(const JobConfig& c) {
    std::vector<Row> rows(c.degrees.size());
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i].n = c.degrees[i];
    return rows;
}

Plot make_plot(const Job& job, const std::optional<ChebyshevSolution>& sol, const WeightSpec& w) {
    Plot p;
    p.hull = job.set.hull();
    p.bands = job.set.bands();
    const double len = p.hull.length();
    const int samples = 480;
    for (int i = 0; i <= samples; ++i) {
        const double x = p.hull.lo - 0.1 * len + 1.2 * len * i / samples;
        p.green.emplace_back(x, green(job.eq, x));
    }
    if (sol) {
        p.degree = sol->degree;
        p.envelope = sol->norm;
        p.alternation_points = sol->alternation_points;
        for (int i = 0; i <= 800; ++i) {
            const double x = p.hull.lo + len * i / 800;
            p.polynomial.emplace_back(x, w(x) * (*sol)(x));
        }
    }
    return p;
}

void finish(RunResult& out) {
    Report& r = out.report;
    r.passed = std::none_of(r.rows.begin(), r.rows.end(), [](const Row& x) { return x.failed; }) &&
               std::all_of(r.checks.begin(), r.checks.end(), [](const Check& c) { return c.pass; });
    out.status = r.passed ? exit_code::ok : exit_code::verification;
}

const PreimageSpec& need_preimage(const JobConfig& c, const std::string& sub) {
    if (!c.set.preimage) throw ConfigError("field set", sub + " needs a preimage set (set.preimage or set.affine.preimage)");
    return *c.set.preimage;
}

Band reference_target(const SetSpec& s) {
    if (s.kind != SetSpec::Kind::Affine) return kUnit;
    const double k = s.target_hull.length() / s.source_hull.length();
    return {s.target_hull.lo + (-1.0 - s.source_hull.lo) * k, s.target_hull.lo + (1.0 - s.source_hull.lo) * k};
}

void preimage_checks(const JobConfig& c, Report& r) {
    const PreimageSpec& spec = need_preimage(c, "preimage");
    const PreimageSet ps = with_context("preimage", [&] { return build_set(spec); });
    for (const CriticalVerdict& v : ps.report.critical) {
        r.critical_values.push_back(v.value);
        r.checks.push_back({"critical point x = " + format_double(v.x), v.admissible, std::nullopt,
                            "Q(x) = " + format_double(v.value)});
    }
    r.checks.push_back({"roots of S are real", ps.report.s_roots_real, std::nullopt, ""});
    r.checks.push_back({"monotone branches over [0, 1]", ps.report.full_branches == spec.top_degree(), std::nullopt,
                        std::to_string(ps.report.full_branches) + " of " + std::to_string(spec.top_degree())});
    const ExactOracle oracle = with_context("exact oracle", [&] { return exact_invariants(spec); });
    // capacity scales with the affine map
    const double scale = reference_target(c.set).length() / 2.0;
    const double exact_cap = oracle.capacity * scale;
    const double dev = *r.capacity - exact_cap;
    r.checks.push_back({"capacity vs exact", std::abs(dev) <= c.tolerances.verify * std::max(1.0, exact_cap), dev,
                        "exact " + format_double(exact_cap)});
}

RunResult run_preimage(const JobConfig& c) {
    RunResult out;
    Report& r = out.report;
    r.subcommand = "preimage";
    const Job job = prepare(c);
    describe(r, job);
    r.rows = empty_rows(c);
    auto sol = sup_rows(job, r.rows, r);
    l2_rows(job, r.rows, r);
    preimage_checks(c, r);
    out.plot = make_plot(job, sol, c.weight);
    finish(out);
    return out;
}

RunResult run_verify(const JobConfig& c) {
    RunResult out;
    Report& r = out.report;
    r.subcommand = "verify";
    const Job job = prepare(c);
    describe(r, job);
    r.rows = empty_rows(c);
    auto sol = sup_rows(job, r.rows, r);
    l2_rows(job, r.rows, r);
    for (const Row& row : r.rows) {
        r.checks.push_back({"degree " + std::to_string(row.n) + " bounds", !row.failed, std::nullopt, ""});
    }
    if (c.set.preimage) {
        const PreimageSpec& spec = *c.set.preimage;
        const SaturationReport sat = with_context("saturation", [&] {
            return saturation_verify(spec, c.tolerances.verify);
        });
        for (const Clause& cl : sat.clauses) {
            r.checks.push_back({std::string("(") + cl.id + ") " + cl.name, cl.pass, cl.deviation, ""});
        }
        if (c.set.kind == SetSpec::Kind::Affine) {
            // the mapped problem must saturate as well
            const int n = spec.degree();
            const auto it = std::find(c.degrees.begin(), c.degrees.end(), n);
            if (it == c.degrees.end()) {
                r.checks.push_back({"mapped equality at degree " + std::to_string(n), false, std::nullopt,
                                    "degrees must include deg S"});
            } else {
                const Row& row = r.rows[static_cast<std::size_t>(it - c.degrees.begin())];
                r.checks.push_back({"mapped sup-norm equality", row.eq_sup.value_or(false), std::nullopt, ""});
                r.checks.push_back({"mapped L2 equality", row.eq_l2.value_or(false), std::nullopt, ""});
                const AffineInstance inst = with_context("affine instance", [&] {
                    return affine_instance(spec, reference_target(c.set));
                });
                const OrthoData od = stieltjes(job.eq, c.measure, n);
                const Poly diff = od.polynomial(n) - inst.orthogonal;
                double worst = 0.0;
                for (double v : diff.coeffs()) worst = std::max(worst, std::abs(v));
                r.checks.push_back({"mapped orthogonal polynomial", worst <= c.tolerances.verify, worst, ""});
            }
        }
    }
    out.plot = make_plot(job, sol, c.weight);
    finish(out);
    return out;
}

}  // namespace

RunResult run(const JobConfig& c, Subcommand sub) {
    if (sub == Subcommand::Preimage) return run_preimage(c);
    if (sub == Subcommand::Verify) return run_verify(c);

    RunResult out;
    Report& r = out.report;
    r.subcommand = to_string(sub);
    const Job job = prepare(c);
    describe(r, job);
    std::optional<ChebyshevSolution> sol;
    switch (sub) {
        case Subcommand::Capacity: break;
        case Subcommand::Equilibrium: {
            r.gap_zeros = job.eq.gap_zeros();
            r.band_masses = job.eq.band_masses();
            const PwData pw = with_context("green", [&] { return pw_data(job.eq); });
            r.critical_values = pw.critical_values;
            r.pw_sum = pw.sum;
            break;
        }
        case Subcommand::Green: {
            std::vector<double> xs = c.points;
            if (xs.empty()) {
                const Band h = job.set.hull();
                for (int i = 0; i <= 40; ++i) xs.push_back(h.lo - 0.25 * h.length() + 1.5 * h.length() * i / 40);
            }
            for (double x : xs) r.green.emplace_back(x, green(job.eq, x));
            break;
        }
        case Subcommand::Chebyshev:
            r.rows = empty_rows(c);
            sol = sup_rows(job, r.rows, r);
            break;
        case Subcommand::Orthopoly:
            r.rows = empty_rows(c);
            l2_rows(job, r.rows, r);
            break;
        default: break;
    }
    out.plot = make_plot(job, sol, c.weight);
    finish(out);
    return out;
}

RunResult run_suite() {
    RunResult out;
    Report& r = out.report;
    r.subcommand = "verify";
    r.config_hash = "builtin";
    verify::run_acceptance([&](const verify::CriterionResult& cr) {
        std::string detail = std::to_string(cr.checks) + " checks, " + std::to_string(cr.failures) + " failed";
        if (!cr.detail.empty()) detail += "; first failure: " + cr.detail;
        r.checks.push_back({"[" + std::to_string(cr.id) + "] " + cr.title, cr.pass, std::nullopt, detail});
        std::cerr << verify::format_result(cr) << std::endl;
    });
    finish(out);
    return out;
}

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError(path, "cannot read config file");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw std::ios_base::failure("cannot write " + path);
}

}  // namespace

int main_entry(int argc, char** argv) {
    CLI::App app{"Potential theory, weighted Chebyshev and orthogonal polynomials on unions of intervals"};
    app.require_subcommand(1);
    std::string config_path, format, svg, out_path;
    const char* names[] = {"capacity", "equilibrium", "green", "chebyshev", "orthopoly", "preimage", "verify"};
    const char* help[] = {"logarithmic capacity",
                          "equilibrium measure: gap zeros, band masses, PW sum",
                          "Green function at config points",
                          "weighted Chebyshev polynomials and sup-norm Widom factors",
                          "orthogonal polynomials and L2 Widom factors",
                          "polynomial preimage set, admissibility and exact values",
                          "check bounds and equality cases (no config: built-in suite)"};
    for (int i = 0; i < 7; ++i) {
        CLI::App* sub = app.add_subcommand(names[i], help[i]);
        auto* opt = sub->add_option("--config", config_path, "job config (JSON)");
        if (std::string(names[i]) != "verify") opt->required();
        sub->add_option("--format", format, "text, csv or json")->check(CLI::IsMember({"text", "csv", "json"}));
        sub->add_option("--svg", svg, "write a plot");
        sub->add_option("--out", out_path, "write the report here instead of stdout");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_code::ok : exit_code::config;
    }
    const std::string name = app.get_subcommands().front()->get_name();
    const Subcommand sub = *parse_subcommand(name);

    try {
        RunResult result;
        OutputSpec output;
        if (config_path.empty()) {
            result = run_suite();
        } else {
            JobConfig config = parse_config(read_file(config_path));
            output = config.output;
            result = run(config, sub);
        }
        if (!format.empty()) output.format = *parse_format(format);
        if (!svg.empty()) output.svg = svg;
        if (!out_path.empty()) output.path = out_path;

        const std::string text = emit(result.report, output.format);
        if (output.path.empty()) {
            std::cout << text << std::flush;
        } else {
            write_file(output.path, text);
        }
        if (!output.svg.empty()) write_file(output.svg, emit_svg(result.plot));
        return result.status;
    } catch (const ConfigError& e) {
        std::cerr << "widomlab " << name << ": config error: " << e.what() << "\n";
        return exit_code::config;
    } catch (const DomainError& e) {
        std::cerr << "widomlab " << name << ": invalid input: " << e.what() << "\n";
        return exit_code::config;
    } catch (const NumericalError& e) {
        std::cerr << "widomlab " << name << ": numerical failure: " << e.what() << "\n";
        return exit_code::numerical;
    } catch (const std::ios_base::failure& e) {
        std::cerr << "widomlab " << name << ": " << e.what() << "\n";
        return exit_code::config;
    } catch (const std::exception& e) {
        std::cerr << "widomlab " << name << ": numerical failure: " << e.what() << "\n";
        return exit_code::numerical;
    }
}

}  // namespace widom::cli

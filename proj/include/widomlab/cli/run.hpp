#pragma once

#include <optional>
#include <string>

#include "widomlab/cli/config.hpp"
#include "widomlab/cli/report.hpp"

namespace widom::cli {

enum class Subcommand { Capacity, Equilibrium, Green, Chebyshev, Orthopoly, Preimage, Verify };

std::string to_string(Subcommand s);
std::optional<Subcommand> parse_subcommand(const std::string& name);

namespace exit_code {
constexpr int ok = 0;
constexpr int verification = 1;
constexpr int config = 2;
constexpr int numerical = 3;
}  // namespace exit_code

struct RunResult {
    Report report;
    Plot plot;
    /// ok or verification; errors are thrown.
    int status = exit_code::ok;
};

/// Runs one job. Throws ConfigError or DomainError for bad input and
/// NumericalError when a solver fails; messages carry the degree or stage.
RunResult run(const JobConfig& config, Subcommand sub);

/// The built-in acceptance suite, as run by `verify` without a config.
RunResult run_suite();

/// Full command line handling: parse, run, emit, map errors to exit codes.
int main_entry(int argc, char** argv);

}  // namespace widom::cli

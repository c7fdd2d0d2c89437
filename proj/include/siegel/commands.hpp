#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace siegel::cli {

/// Resolved configuration of one CLI invocation.  Flags override config-file
/// values; SIEGEL_NORMS_SEED overrides the default seed, flags win over it.
struct RunConfig {
    std::string command;  // verify | norms | estimate | scan | plot
    std::vector<int> n_list{0, 1, 2};
    std::optional<double> alpha;
    double p = 2.0;                   // estimate: the single exponent swept
    std::vector<double> p_grid;       // norms/scan grid; default log in 1/p
    std::size_t samples = 1000000;
    std::uint64_t seed = 0x5EED;
    int workers = 1;
    double tolerance = 1e-2;          // verify: residual floor
    std::string out_path;             // empty: stdout
    std::string case_filter;          // verify: restrict to one identity tag
    std::string family = "talpha";    // estimate: talpha | bergman
    std::vector<double> t_grid;       // estimate override (talpha)
    std::vector<double> eps_grid;     // estimate override (bergman)
    std::string in_path;              // plot input CSV
    std::string x_column;             // plot abscissa (default first column)
    std::vector<std::string> columns; // plot series selection
};

struct CommandResult {
    int exit_code = 0;
    std::string output;  // CSV or SVG text
    std::string message; // diagnostics for stderr
};

/// Default p grid: 13 points log-spaced in 1/p over (1/8, 7/8).
std::vector<double> default_p_grid();

/// Canonical reproduction line recorded in CSV metadata.  Deliberately
/// omits --workers: results are worker-count independent by contract.
std::string canonical_args(const RunConfig& config);

CommandResult run_verify(const RunConfig& config);
CommandResult run_norms(const RunConfig& config);
CommandResult run_estimate(const RunConfig& config);
CommandResult run_scan(const RunConfig& config);
CommandResult run_plot(const RunConfig& config);

/// Dispatch on config.command; unknown commands exit 2.
CommandResult run(const RunConfig& config);

}  // namespace siegel::cli

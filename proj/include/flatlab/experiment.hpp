#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace flatlab {

struct ExperimentContext {
    std::string config_path;
    std::string out_dir;
    int workers = 4;
    std::uint64_t seed = 0;
};

struct RunResult {
    bool pass = false;
    std::string summary;
};

/// Dispatches on the config's "kind": pipe | net | bounds | slope.
RunResult run_experiment(const ExperimentContext& ctx);

RunResult run_pipe_convergence(const ExperimentContext& ctx);
RunResult run_net_convergence(const ExperimentContext& ctx);
RunResult run_bound_calculators(const ExperimentContext& ctx);
RunResult run_slope_fit(const ExperimentContext& ctx);

/// Self-contained log-log scatter+line plot; series parsed from CSV text.
std::string svg_loglog_from_csv(const std::string& csv_text, const std::string& x_column,
                                const std::vector<std::string>& y_columns,
                                const std::string& title);

} // namespace flatlab

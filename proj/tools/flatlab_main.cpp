#include <cstdio>
#include <exception>
#include <string>

#include <CLI11.hpp>

#include "flatlab/experiment.hpp"
#include "flatlab/version.hpp"

namespace {

struct CommonArgs {
    std::string config;
    std::string out = "out";
    int workers = 4;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config, "experiment config (json)")->required();
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--workers", args.workers, "worker threads");
    cmd->add_option("--seed", args.seed, "rng seed for sampling");
}

int run(const CommonArgs& args, flatlab::RunResult (*fn)(const flatlab::ExperimentContext&)) {
    flatlab::ExperimentContext ctx;
    ctx.config_path = args.config;
    ctx.out_dir = args.out;
    ctx.workers = args.workers;
    ctx.seed = args.seed;
    try {
        flatlab::RunResult res = fn(ctx);
        std::printf("%s\n", res.summary.c_str());
        return res.pass ? 0 : 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"flatlab: metric-surgery experiments and flat-distance bound calculators"};
    app.set_version_flag("--version", flatlab::kVersion);
    app.require_subcommand(1);

    CommonArgs pipe_args, net_args, bounds_args, slope_args;
    CLI::App* pipe = app.add_subcommand("pipe-sweep", "single-pair tunnel/string surgery sweep");
    add_common(pipe, pipe_args);
    CLI::App* net = app.add_subcommand("net-sweep", "eps-net string/tunnel space sweep");
    add_common(net, net_args);
    CLI::App* bounds = app.add_subcommand("bounds-golden", "golden bound-calculator table");
    add_common(bounds, bounds_args);
    CLI::App* slope = app.add_subcommand("slope", "log-log slope fit of a config table");
    add_common(slope, slope_args);

    CLI11_PARSE(app, argc, argv);

    if (pipe->parsed()) return run(pipe_args, flatlab::run_pipe_convergence);
    if (net->parsed()) return run(net_args, flatlab::run_net_convergence);
    if (bounds->parsed()) return run(bounds_args, flatlab::run_bound_calculators);
    if (slope->parsed()) return run(slope_args, flatlab::run_slope_fit);
    return 2;
}

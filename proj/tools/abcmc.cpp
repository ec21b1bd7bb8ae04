#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "cli/commands.hpp"
#include "cli/manifest.hpp"

namespace {

void add_common(CLI::App* sub, abcmc::cli::CommonOptions& o) {
    sub->add_option("--config", o.config_path, "JSON config document");
    sub->add_option("--seed", o.seed, "override the config seed");
    sub->add_option("--iters", o.iters, "override the iteration / draw count");
    sub->add_flag("--full", o.full, "bench: use 5e6 iterations per run");
    sub->add_option("--out", o.out, "output directory (ABCMC_OUT takes precedence)");
    sub->add_option("--jobs", o.jobs, "worker threads for sweeps")->check(CLI::PositiveNumber);
    sub->add_flag("--print-config", o.print_config, "print the resolved config and exit");
    sub->add_flag("!--no-svg", o.svg, "bench: skip SVG charts");
}

}  // namespace

int main(int argc, char** argv) {
    using namespace abcmc::cli;
    CLI::App app{"Pseudo-marginal ABC samplers, exact verification and benchmarks"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    CommonOptions opts;
    std::string suite = "all", figure;

    auto* rejection = app.add_subcommand("rejection", "ABC rejection sampling");
    add_common(rejection, opts);
    auto* mcmc = app.add_subcommand("mcmc", "pseudo-marginal ABC-MCMC with diagnostics");
    add_common(mcmc, opts);
    auto* verify = app.add_subcommand("verify", "exact finite-state verification suites");
    add_common(verify, opts);
    verify->add_option("suite", suite, "ordering|handicap|lazy_bound|altmcmc|convex|all");
    auto* bench = app.add_subcommand("bench", "Gaussian benchmark figures");
    add_common(bench, opts);
    bench->add_option("figure", figure, "fig1-left|fig1-right|fig2-yobs|fig2-sigma")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfigError;
    }

    return guarded(
        [&] {
            if (*rejection) return cmd_rejection(opts, std::cout);
            if (*mcmc) return cmd_mcmc(opts, std::cout);
            if (*verify) return cmd_verify(opts, suite, std::cout);
            return cmd_bench(opts, figure, std::cout);
        },
        std::cerr);
}

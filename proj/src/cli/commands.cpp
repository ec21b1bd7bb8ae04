#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <tuple>

#include "abcmc/cost_model.hpp"
#include "abcmc/diagnostics.hpp"
#include "abcmc/errors.hpp"
#include "abcmc/gaussian_bench.hpp"
#include "abcmc/samplers.hpp"
#include "abcmc/verify_suite.hpp"
#include "cli/csv.hpp"
#include "cli/manifest.hpp"
#include "cli/svg.hpp"

namespace abcmc::cli {
namespace fs = std::filesystem;

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

ModelSpec make_model(const Json& config) {
    const auto kind = get<std::string>(config, "/model/kind");
    const auto y_obs = get<double>(config, "/model/y_obs");
    if (kind == "gaussian") {
        const auto sigma = get<double>(config, "/model/sigma_y");
        if (!(sigma > 0)) throw ConfigError("model.sigma_y must be positive");
        return gaussian_model(y_obs, sigma);
    }
    if (kind == "always_hit") return always_hit_model(y_obs);
    throw ConfigError("unknown model kind '" + kind + "'");
}

KernelSpec make_kernel(const Json& config) {
    KernelSpec k;
    k.kind = kernel_kind_from_string(get<std::string>(config, "/kernel/kind"));
    k.bandwidth = get<double>(config, "/kernel/bandwidth");
    k.sup_bound = get<double>(config, "/kernel/sup_bound");
    k.validate();
    return k;
}

ProposalSpec make_proposal(const Json& config, std::size_t dim) {
    const auto kind = get<std::string>(config, "/mcmc/proposal/kind");
    ProposalSpec p;
    if (kind == "independence")
        p = gaussian_independence_proposal(dim, get<double>(config, "/mcmc/proposal/mean"),
                                           get<double>(config, "/mcmc/proposal/sd"));
    else if (kind == "random_walk")
        p = gaussian_random_walk_proposal(dim, get<double>(config, "/mcmc/proposal/sigma"));
    else
        throw ConfigError("unknown proposal kind '" + kind + "'");
    p.holding_probability = get<double>(config, "/mcmc/proposal/holding_probability");
    p.validate();
    return p;
}

std::size_t get_m(const Json& config) {
    const auto m = get<std::int64_t>(config, "/M");
    if (m < 1) throw ConfigError("M must be at least 1");
    return static_cast<std::size_t>(m);
}

std::vector<double> make_init(const Json& config, const ModelSpec& model) {
    const Json& init = config.at("mcmc").at("init");
    if (init.is_null()) {
        if (get<std::string>(config, "/model/kind") == "gaussian") {
            const double s = get<double>(config, "/model/sigma_y");
            return {get<double>(config, "/model/y_obs") / (1.0 + s * s)};
        }
        return std::vector<double>(model.param_dim, 0.0);
    }
    auto v = get<std::vector<double>>(config, "/mcmc/init");
    if (v.size() != model.param_dim) throw ConfigError("mcmc.init must have one value per parameter");
    return v;
}

std::vector<std::string> theta_columns(std::size_t dim) {
    if (dim == 1) return {"theta"};
    std::vector<std::string> out;
    for (std::size_t k = 0; k < dim; ++k) out.push_back("theta_" + std::to_string(k));
    return out;
}

BenchConfig make_bench_config(const Json& config, std::size_t jobs) {
    BenchConfig b;
    b.y_obs = get<double>(config, "/bench/y_obs");
    b.sigma_y = get<double>(config, "/bench/sigma_y");
    b.kernel_kind = kernel_kind_from_string(get<std::string>(config, "/bench/kernel"));
    b.n_iters = get<std::size_t>(config, "/bench/n_iters");
    b.discount = get<double>(config, "/bench/discount");
    b.target_rate = get<double>(config, "/bench/target_rate");
    b.epsilon_grid = get<std::vector<double>>(config, "/bench/epsilon_grid");
    b.m_grid = get<std::vector<std::size_t>>(config, "/bench/m_grid");
    b.discount_grid = get<std::vector<double>>(config, "/bench/discount_grid");
    b.seed = get<std::uint64_t>(config, "/seed");
    b.jobs = std::max<std::size_t>(1, jobs);
    b.validate();
    return b;
}

struct RunScope {
    fs::path dir;
    RunManifest manifest;

    RunScope(const CommonOptions& options, const std::string& command, const Json& config)
        : dir(resolve_out_dir(options.out)) {
        fs::create_directories(dir);
        std::ofstream echo(dir / "config.json");
        echo << config.dump(2) << '\n';
        manifest.command = command;
        manifest.config_digest = config_digest(config);
        manifest.seed = get<std::uint64_t>(config, "/seed");
        manifest.started = utc_timestamp();
    }

    void finish() {
        manifest.finished = utc_timestamp();
        write_manifest(dir, manifest);
    }
};

}  // namespace

fs::path resolve_out_dir(const std::optional<std::string>& out) {
    if (const char* env = std::getenv("ABCMC_OUT"); env && *env) return env;
    if (out) return *out;
    return "abcmc-out";
}

Json resolve_config(const CommonOptions& options, const std::string& command) {
    Json config = load_config(options.config_path);
    if (options.seed) config["seed"] = *options.seed;
    if (options.full && command == "bench") config["bench"]["n_iters"] = kFullBenchIters;
    if (options.iters) {
        if (command == "rejection") config["rejection"]["n_accept"] = *options.iters;
        else if (command == "mcmc") config["mcmc"]["n"] = *options.iters;
        else if (command == "bench") config["bench"]["n_iters"] = *options.iters;
    }
    return config;
}

int cmd_rejection(const CommonOptions& options, std::ostream& log) {
    const Json config = resolve_config(options, "rejection");
    if (options.print_config) {
        log << config.dump(2) << '\n';
        return kOk;
    }
    const ModelSpec model = make_model(config);
    const KernelSpec kernel = make_kernel(config);
    const std::size_t m = get_m(config);
    const auto n_accept = get<std::size_t>(config, "/rejection/n_accept");
    if (n_accept < 1) throw ConfigError("rejection.n_accept must be at least 1");
    const auto seed = get<std::uint64_t>(config, "/seed");
    const auto stream = get<std::uint64_t>(config, "/stream");

    RunScope run(options, "rejection", config);
    RngStream rng(seed, stream);
    const Trace trace = abc_rejection(model, kernel, m, n_accept, rng);

    auto header = theta_columns(trace.dim);
    header.insert(header.begin(), "index");
    CsvWriter draws(run.dir / "draws.csv", header);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        draws << static_cast<std::uint64_t>(i);
        for (double v : trace.draw(i)) draws << v;
        draws.end_row();
    }

    const double n_prop = static_cast<double>(trace.accepted.size());
    const double p = static_cast<double>(trace.size()) / n_prop;
    CsvWriter summary(run.dir / "summary.csv",
                      {"algorithm", "M", "kernel", "epsilon", "n_accept", "n_proposals",
                       "acceptance_rate", "stderr", "pseudo_sample_count", "seed", "stream"});
    summary << "abc_rejection" << static_cast<std::uint64_t>(m) << std::string(to_string(kernel.kind))
            << kernel.bandwidth << static_cast<std::uint64_t>(trace.size())
            << static_cast<std::uint64_t>(trace.accepted.size()) << p
            << std::sqrt(p * (1 - p) / n_prop) << trace.pseudo_sample_count << seed << stream;
    summary.end_row();
    run.finish();
    log << "rejection: M=" << m << " acceptance=" << format_double(p) << " proposals="
        << trace.accepted.size() << " -> " << run.dir.string() << '\n';
    return kOk;
}

int cmd_mcmc(const CommonOptions& options, std::ostream& log) {
    const Json config = resolve_config(options, "mcmc");
    if (options.print_config) {
        log << config.dump(2) << '\n';
        return kOk;
    }
    const ModelSpec model = make_model(config);
    const KernelSpec kernel = make_kernel(config);
    const ProposalSpec proposal = make_proposal(config, model.param_dim);
    const std::size_t m = get_m(config);
    const auto n = get<std::size_t>(config, "/mcmc/n");
    const auto burn_in = get<std::size_t>(config, "/mcmc/burn_in");
    if (burn_in >= n) throw ConfigError("mcmc.burn_in must be smaller than mcmc.n");
    const auto delta_var = get<double>(config, "/mcmc/delta_var");
    const auto discount = get<double>(config, "/mcmc/discount");
    const auto functions = get<std::vector<std::string>>(config, "/mcmc/functions");
    const bool companion = get<bool>(config, "/mcmc/companion_m1");
    const auto seed = get<std::uint64_t>(config, "/seed");
    const auto stream = get<std::uint64_t>(config, "/stream");
    const auto init = make_init(config, model);
    for (const auto& f : functions)
        if (f != "theta" && f != "theta_sq" && f != "constant")
            throw ConfigError("unknown test function '" + f + "'");
    if (!(delta_var > 0)) throw ConfigError("mcmc.delta_var must be positive");
    cost_per_iteration(m, discount);

    RunScope run(options, "mcmc", config);
    RngStream rng(seed, stream);
    const Trace trace = discard_burn_in(pm_mcmc(model, kernel, proposal, m, n, init, rng), burn_in);

    auto header = theta_columns(trace.dim);
    header.insert(header.begin(), "iteration");
    for (const char* c : {"accepted", "held", "weight"}) header.emplace_back(c);
    CsvWriter tw(run.dir / "trace.csv", header);
    for (std::size_t i = 0; i < trace.size(); ++i) {
        tw << static_cast<std::uint64_t>(i + burn_in);
        for (double v : trace.draw(i)) tw << v;
        tw << int{trace.accepted[i]} << int{trace.held[i]} << trace.weights[i];
        tw.end_row();
    }

    auto values_of = [](const Trace& t, const std::string& f) {
        std::vector<double> x = t.coordinate(0);
        if (f == "theta_sq") for (double& v : x) v *= v;
        if (f == "constant") std::fill(x.begin(), x.end(), 1.0);
        return x;
    };

    std::optional<Trace> trace_1;
    if (m > 1 && companion) {
        RngStream rng1 = RngStream(seed, stream).substream(1);
        trace_1 = discard_burn_in(pm_mcmc(model, kernel, proposal, 1, n, init, rng1), burn_in);
    }

    const double acc = acceptance_rate(trace);
    CsvWriter dw(run.dir / "diagnostics.csv",
                 {"function", "M", "n", "mean", "iid_variance", "asymptotic_variance", "batch_size",
                  "n_batches", "stderr_mean", "acceptance_rate", "pseudo_sample_count", "v_m1",
                  "delta_var", "discount", "cost_per_iteration", "cost_serial",
                  "cost_parallel_single", "cost_parallel_multi"});
    for (const auto& f : functions) {
        const auto x = values_of(trace, f);
        const VarianceEstimate v = asymptotic_variance(x);
        double v1 = kNaN;
        if (m == 1) v1 = v.value;
        else if (trace_1) v1 = asymptotic_variance(values_of(*trace_1, f)).value;
        CostReport cost = mcmc_costs(v.value, std::isnan(v1) ? v.value : v1, m, delta_var, discount);
        if (std::isnan(v1)) cost.parallel_multi_chain = kNaN;
        dw << f << static_cast<std::uint64_t>(m) << static_cast<std::uint64_t>(trace.size())
           << mean(x) << iid_variance(x) << v.value << static_cast<std::uint64_t>(v.batch_size)
           << static_cast<std::uint64_t>(v.n_batches) << v.standard_error_of_mean << acc
           << trace.pseudo_sample_count << v1 << delta_var << discount
           << cost_per_iteration(m, discount) << cost.serial << cost.parallel_single_chain
           << cost.parallel_multi_chain;
        dw.end_row();
    }
    run.finish();
    log << "mcmc: M=" << m << " n=" << trace.size() << " acceptance=" << format_double(acc) << " -> "
        << run.dir.string() << '\n';
    return kOk;
}

int cmd_verify(const CommonOptions& options, const std::string& suite, std::ostream& log) {
    const auto& names = verify_suite_names();
    if (suite != "all" && std::find(names.begin(), names.end(), suite) == names.end())
        throw ConfigError("unknown verify suite '" + suite + "'");
    const Json config = resolve_config(options, "verify");
    if (options.print_config) {
        log << config.dump(2) << '\n';
        return kOk;
    }
    VerifyOptions vo;
    vo.n_random_instances = get<std::size_t>(config, "/verify/n_random_instances");
    vo.seed = get<std::uint64_t>(config, "/verify/seed");
    vo.tolerance = get<double>(config, "/verify/tolerance");
    vo.convex_pairs = get<std::size_t>(config, "/verify/convex_pairs");
    vo.oracle_functions = get<std::size_t>(config, "/verify/oracle_functions");
    vo.m_values = get<std::vector<std::size_t>>(config, "/verify/m_values");
    if (vo.m_values.empty() || std::find(vo.m_values.begin(), vo.m_values.end(), 0) != vo.m_values.end())
        throw ConfigError("verify.m_values must be non-empty and positive");
    if (!(vo.tolerance >= 0)) throw ConfigError("verify.tolerance must be nonnegative");

    RunScope run(options, "verify " + suite, config);
    const auto rows = run_verify_suite(suite, vo);
    CsvWriter w(run.dir / "verify.csv", {"suite", "instance", "check", "M", "alpha", "laziness",
                                         "function", "lhs", "rhs", "margin", "status", "note"});
    std::size_t pass = 0, skipped = 0;
    for (const auto& r : rows) {
        w << r.suite << r.instance << r.check << static_cast<std::uint64_t>(r.m) << r.alpha
          << r.laziness << r.function << r.lhs << r.rhs << r.margin << std::string(to_string(r.status))
          << r.note;
        w.end_row();
        pass += r.status == VerifyStatus::pass;
        skipped += r.status == VerifyStatus::skipped;
    }
    run.finish();
    const std::size_t failed = count_failures(rows);
    log << "verify " << suite << ": " << rows.size() << " rows, " << pass << " passed, " << skipped
        << " skipped, " << failed << " failed -> " << run.dir.string() << '\n';
    return failed == 0 ? kOk : kVerifyFailed;
}

int cmd_bench(const CommonOptions& options, const std::string& figure, std::ostream& log) {
    if (figure != "fig1-left" && figure != "fig1-right" && figure != "fig2-yobs" && figure != "fig2-sigma")
        throw ConfigError("unknown bench figure '" + figure + "'");
    const Json config = resolve_config(options, "bench");
    if (options.print_config) {
        log << config.dump(2) << '\n';
        return kOk;
    }
    const BenchConfig bench = make_bench_config(config, options.jobs);
    RunScope run(options, "bench " + figure, config);
    const fs::path csv = run.dir / (figure + ".csv");
    const fs::path svg = run.dir / (figure + ".svg");

    if (figure == "fig1-left") {
        auto rows = rate_per_pseudosample(bench);
        std::sort(rows.begin(), rows.end(), [](const RateRow& a, const RateRow& b) {
            return std::tie(a.m, a.epsilon) < std::tie(b.m, b.epsilon);
        });
        {
            CsvWriter w(csv, {"M", "epsilon", "acc_rate", "rate_per_pseudosample", "stderr", "seed"});
            for (const auto& r : rows) {
                w << static_cast<std::uint64_t>(r.m) << r.epsilon << r.acc_rate
                  << r.rate_per_pseudosample << r.stderr_rate << r.seed;
                w.end_row();
            }
        }
        if (options.svg)
            chart_from_csv(csv, svg, "epsilon", "M", "rate_per_pseudosample",
                           {"Acceptance rate per pseudo-sample", "M", "rate per pseudo-sample", true,
                            true, {}});
    } else if (figure == "fig1-right") {
        auto rows = fig1_right(bench);
        std::sort(rows.begin(), rows.end(), [](const CalibratedRow& a, const CalibratedRow& b) {
            return std::tie(a.discount, a.m) < std::tie(b.discount, b.m);
        });
        {
            CsvWriter w(csv, {"M", "discount", "epsilon", "target", "acc_rate", "seed"});
            for (const auto& r : rows) {
                w << static_cast<std::uint64_t>(r.m) << r.discount << r.epsilon << r.target
                  << r.acc_rate << r.seed;
                w.end_row();
            }
        }
        if (options.svg)
            chart_from_csv(csv, svg, "discount", "M", "epsilon",
                           {"Calibrated epsilon at fixed budget", "M", "epsilon", true, true, {}});
    } else {
        const SweepVariable vary = figure == "fig2-yobs" ? SweepVariable::y_obs : SweepVariable::sigma_y;
        const std::string name = to_string(vary);
        const auto values = get<std::vector<double>>(config, "/bench/" + name + "_values");
        if (values.empty()) throw ConfigError("bench." + name + "_values must be non-empty");
        auto rows = fig2_sweep(bench, vary, values);
        std::sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
            return std::tie(a.value, a.m) < std::tie(b.value, b.m);
        });
        {
            CsvWriter w(csv, {name, "M", "epsilon", "normalized_epsilon", "seed"});
            for (const auto& r : rows) {
                w << r.value << static_cast<std::uint64_t>(r.m) << r.epsilon << r.normalized_epsilon
                  << r.seed;
                w.end_row();
            }
        }
        if (options.svg)
            chart_from_csv(csv, svg, name, "M", "normalized_epsilon",
                           {"Normalized calibrated epsilon (discount 8)", "M", "epsilon / epsilon(M=1)",
                            true, false, {}});
    }
    run.finish();
    log << "bench " << figure << " (n_iters=" << bench.n_iters << ") -> " << csv.string() << '\n';
    return kOk;
}

int guarded(const std::function<int()>& body, std::ostream& err) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const InsufficientDataError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const SamplerError& e) {
        err << "sampler error: " << e.what() << '\n';
        return kSamplerError;
    } catch (const CalibrationError& e) {
        err << "calibration error: " << e.what() << '\n';
        return kSamplerError;
    } catch (const ReducibilityError& e) {
        err << "sampler error: " << e.what() << '\n';
        return kSamplerError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kInternalError;
    }
}

}  // namespace abcmc::cli

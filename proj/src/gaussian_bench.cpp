#include "abcmc/gaussian_bench.hpp"

#include <cmath>
#include <limits>

#include "abcmc/cost_model.hpp"
#include "abcmc/diagnostics.hpp"
#include "abcmc/errors.hpp"
#include "abcmc/normal.hpp"
#include "parallel.hpp"

namespace abcmc {

namespace {

constexpr std::uint64_t kRateTag = 0x72617465ULL;
constexpr std::uint64_t kCalibrationTag = 0x63616c69ULL;
// A chain that cannot find a nonzero initial weight within this many tries
// is treated as accepting nothing at that bandwidth.
constexpr std::uint64_t kCalibrationInitAttempts = 1'000'000;

KernelSpec make_kernel(KernelKind kind, double eps) {
    return kind == KernelKind::uniform ? KernelSpec::uniform(eps) : KernelSpec::gaussian(eps);
}

}  // namespace

ModelSpec gaussian_model(double y_obs, double sigma_y) {
    if (!(sigma_y > 0.0)) throw ConfigError("sigma_y must be positive");
    ModelSpec m;
    m.param_dim = m.data_dim = m.summary_dim = 1;
    m.prior_sample = [](RngStream& rng, std::span<double> theta) { theta[0] = rng.normal(); };
    m.prior_density = [](std::span<const double> theta) { return normal_pdf(theta[0]); };
    m.simulate = [sigma_y](std::span<const double> theta, RngStream& rng, std::span<double> y) {
        y[0] = theta[0] + sigma_y * rng.normal();
    };
    m.summary = [](std::span<const double> y, std::span<double> s) { s[0] = y[0]; };
    m.distance = [](std::span<const double> a, std::span<const double> b) {
        return std::abs(a[0] - b[0]);
    };
    m.observed_summary = {y_obs};
    return m;
}

ProposalSpec gaussian_bench_proposal(double holding_probability) {
    ProposalSpec p = gaussian_independence_proposal(1, 0.0, 1.0);
    p.holding_probability = holding_probability;
    return p;
}

ModelSpec always_hit_model(double y_obs) {
    ModelSpec m = gaussian_model(y_obs, 1.0);
    m.simulate = [y_obs](std::span<const double>, RngStream&, std::span<double> y) { y[0] = y_obs; };
    return m;
}

double gaussian_hit_probability(double y_obs, double sigma_y, double eps, double theta) {
    if (std::isinf(eps)) return 1.0;
    return normal_cdf((y_obs - theta + eps) / sigma_y) - normal_cdf((y_obs - theta - eps) / sigma_y);
}

GridModel gaussian_grid_model(double y_obs, double sigma_y, double eps, std::size_t n_points,
                              double half_width) {
    if (n_points < 2) throw ConfigError("grid needs at least 2 points");
    GridModel g;
    g.name = "gaussian-grid";
    g.theta_grid.resize(n_points);
    g.prior_probs.resize(n_points);
    g.tau.resize(n_points);
    double total = 0.0;
    for (std::size_t i = 0; i < n_points; ++i) {
        const double theta = -half_width + 2.0 * half_width * static_cast<double>(i) /
                                               static_cast<double>(n_points - 1);
        g.theta_grid[i] = theta;
        g.prior_probs[i] = normal_pdf(theta);
        total += g.prior_probs[i];
        g.tau[i] = gaussian_hit_probability(y_obs, sigma_y, eps, theta);
    }
    for (auto& p : g.prior_probs) p /= total;
    g.proposal_probs = independence_proposal_matrix(g.prior_probs);
    return g;
}

void BenchConfig::validate() const {
    if (!(sigma_y > 0.0)) throw ConfigError("sigma_y must be positive");
    if (epsilon && !(*epsilon > 0.0)) throw ConfigError("epsilon must be positive");
    if (m_grid.empty() || epsilon_grid.empty() || discount_grid.empty())
        throw ConfigError("bench grids must be nonempty");
    for (auto m : m_grid)
        if (m == 0) throw ConfigError("M grid entries must be positive");
    for (auto e : epsilon_grid)
        if (!(e > 0.0)) throw ConfigError("epsilon grid entries must be positive");
    for (auto d : discount_grid)
        if (!(d >= 1.0)) throw ConfigError("discounts must be at least 1");
    if (!(discount >= 1.0)) throw ConfigError("discount must be at least 1");
    if (!(target_rate > 0.0 && target_rate < 1.0)) throw ConfigError("target_rate must lie in (0, 1)");
    if (n_iters < 10'000) throw ConfigError("bench runs need at least 10^4 iterations");
}

double bench_init(const BenchConfig& config) {
    return config.y_obs / (1.0 + config.sigma_y * config.sigma_y);
}

std::vector<RateRow> rate_per_pseudosample(const BenchConfig& config, const ModelSpec& model,
                                           const ProposalSpec& proposal,
                                           std::span<const double> init) {
    config.validate();
    const std::size_t n_eps = config.epsilon_grid.size();
    std::vector<RateRow> rows(config.m_grid.size() * n_eps);
    detail::parallel_for(rows.size(), config.jobs, [&](std::size_t cell) {
        const std::size_t m = config.m_grid[cell / n_eps];
        const std::size_t e = cell % n_eps;
        const double eps = config.epsilon_grid[e];
        RngStream rng(config.seed, stream_key({kRateTag, m, e}));
        const Trace trace = pm_mcmc(model, make_kernel(config.kernel_kind, eps), proposal, m,
                                    config.n_iters, init, rng);
        const auto indicators = acceptance_indicators(trace);
        const double cost = cost_per_iteration(m, config.discount);
        RateRow row;
        row.m = m;
        row.epsilon = eps;
        row.acc_rate = acceptance_rate(trace);
        row.rate_per_pseudosample = row.acc_rate / cost;
        row.stderr_rate = asymptotic_variance(indicators).standard_error_of_mean / cost;
        row.seed = config.seed;
        rows[cell] = row;
    });
    return rows;
}

std::vector<RateRow> rate_per_pseudosample(const BenchConfig& config) {
    const double init = bench_init(config);
    return rate_per_pseudosample(config, gaussian_model(config.y_obs, config.sigma_y),
                                 gaussian_bench_proposal(), std::span<const double>(&init, 1));
}

CalibrationResult calibrate_epsilon(const BenchConfig& config, std::size_t m,
                                    const ModelSpec& model, const ProposalSpec& proposal,
                                    std::span<const double> init) {
    config.validate();
    CalibrationResult result;
    result.target = config.target_rate * cost_per_iteration(m, config.discount);
    if (result.target >= 1.0)
        throw CalibrationError("acceptance budget " + std::to_string(result.target) +
                               " is unattainable for M = " + std::to_string(m));

    const RngStream base(config.seed, stream_key({kCalibrationTag, m}));
    SamplerLimits limits;
    limits.max_init_attempts = kCalibrationInitAttempts;
    auto acceptance_at = [&](double eps) {
        ++result.evaluations;
        RngStream rng = base;
        try {
            const Trace trace = pm_mcmc(model, make_kernel(config.kernel_kind, eps), proposal, m,
                                        config.n_iters, init, rng, limits);
            return acceptance_rate(trace);
        } catch (const SamplerError&) {
            return 0.0;
        }
    };

    double lo = kCalibrationLow, hi = kCalibrationHigh;
    const double acc_lo = acceptance_at(lo);
    if (acc_lo >= result.target) {
        result.epsilon = lo;
        result.acc_rate = acc_lo;
        return result;
    }
    const double acc_hi = acceptance_at(hi);
    if (acc_hi < result.target)
        throw CalibrationError("no bandwidth in [1e-6, 1e3] reaches acceptance " +
                               std::to_string(result.target));
    double acc_mid = acc_hi;
    while (hi / lo > 1.02) {
        const double mid = std::sqrt(lo * hi);
        acc_mid = acceptance_at(mid);
        if (acc_mid >= result.target)
            hi = mid;
        else
            lo = mid;
    }
    result.epsilon = std::sqrt(lo * hi);
    result.acc_rate = acc_mid;
    return result;
}

CalibrationResult calibrate_epsilon(const BenchConfig& config, std::size_t m) {
    const double init = bench_init(config);
    return calibrate_epsilon(config, m, gaussian_model(config.y_obs, config.sigma_y),
                             gaussian_bench_proposal(), std::span<const double>(&init, 1));
}

std::vector<CalibratedRow> fig1_right(const BenchConfig& config) {
    config.validate();
    const std::size_t n_m = config.m_grid.size();
    std::vector<CalibratedRow> rows(config.discount_grid.size() * n_m);
    detail::parallel_for(rows.size(), config.jobs, [&](std::size_t cell) {
        BenchConfig c = config;
        c.discount = config.discount_grid[cell / n_m];
        c.jobs = 1;
        const std::size_t m = config.m_grid[cell % n_m];
        const CalibrationResult r = calibrate_epsilon(c, m);
        rows[cell] = CalibratedRow{m, c.discount, r.epsilon, r.target, r.acc_rate, config.seed};
    });
    return rows;
}

std::string to_string(SweepVariable v) {
    return v == SweepVariable::y_obs ? "y_obs" : "sigma_y";
}

std::vector<double> default_sweep_values(SweepVariable vary) {
    if (vary == SweepVariable::y_obs) return {2, 4, 6, 8};
    return {0.01, 0.05, 0.1, 0.5, 1, 2};
}

std::vector<SweepRow> fig2_sweep(const BenchConfig& config, SweepVariable vary,
                                 const std::vector<double>& values) {
    config.validate();
    if (values.empty()) throw ConfigError("sweep needs at least one curve value");
    // The curves are normalised by their M = 1 bandwidth, so M = 1 is always run.
    std::vector<std::size_t> ms{1};
    for (auto m : config.m_grid)
        if (m != 1) ms.push_back(m);
    const std::size_t n_m = ms.size();

    std::vector<SweepRow> rows(values.size() * n_m);
    detail::parallel_for(rows.size(), config.jobs, [&](std::size_t cell) {
        BenchConfig c = config;
        c.discount = 8.0;
        c.jobs = 1;
        const double value = values[cell / n_m];
        if (vary == SweepVariable::y_obs)
            c.y_obs = value;
        else
            c.sigma_y = value;
        const std::size_t m = ms[cell % n_m];
        const CalibrationResult r = calibrate_epsilon(c, m);
        rows[cell] = SweepRow{vary, value, m, r.epsilon, 1.0, config.seed};
    });
    for (std::size_t v = 0; v < values.size(); ++v) {
        const double base = rows[v * n_m].epsilon;
        for (std::size_t k = 0; k < n_m; ++k) rows[v * n_m + k].normalized_epsilon = rows[v * n_m + k].epsilon / base;
    }
    return rows;
}

}  // namespace abcmc

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "abcmc/grid_chains.hpp"
#include "abcmc/model.hpp"
#include "abcmc/samplers.hpp"

namespace abcmc {

/// theta ~ N(0, 1), y | theta ~ N(theta, sigma_y^2), identity summary,
/// absolute-difference distance.
ModelSpec gaussian_model(double y_obs, double sigma_y);

/// The bench proposal: independence N(0, 1), i.e. the prior.
ProposalSpec gaussian_bench_proposal(double holding_probability = 0.0);

/// Degenerate model whose simulator always reproduces y_obs exactly.
ModelSpec always_hit_model(double y_obs = 0.0);

/// P(|y_obs - y| < eps) for y ~ N(theta, sigma_y^2).
double gaussian_hit_probability(double y_obs, double sigma_y, double eps, double theta);

/// Equally spaced grid on [-half_width, half_width], prior mass proportional
/// to the N(0, 1) density, tau from the normal CDF, independence proposal
/// equal to the prior.
GridModel gaussian_grid_model(double y_obs, double sigma_y, double eps,
                              std::size_t n_points = 15, double half_width = 3.0);

struct BenchConfig {
    double y_obs = 2.0;
    double sigma_y = 1.0;
    /// Fixed bandwidth; empty means "calibrate".
    std::optional<double> epsilon;
    std::vector<double> epsilon_grid{0.25, 0.125, 0.0625, 0.03125, 0.015625};
    std::vector<std::size_t> m_grid{1, 2, 4, 8, 16, 32, 64};
    std::vector<double> discount_grid{1, 2, 4, 8, 16};
    std::size_t n_iters = 200'000;
    double discount = 1.0;
    /// Accepted fraction required per unit of pseudo-sampling cost.
    double target_rate = 0.004;
    KernelKind kernel_kind = KernelKind::uniform;
    std::uint64_t seed = 1;
    std::size_t jobs = 1;

    void validate() const;
};

inline constexpr std::size_t kFullBenchIters = 5'000'000;

/// Starting point used by bench chains: the exact posterior mean.
double bench_init(const BenchConfig& config);

struct RateRow {
    std::size_t m = 1;
    double epsilon = 0.0;
    double acc_rate = 0.0;
    double rate_per_pseudosample = 0.0;
    double stderr_rate = 0.0;
    std::uint64_t seed = 0;
};

/// For every (M, eps) cell: run pm_mcmc for n_iters and report acceptance
/// rate divided by cost_per_iteration(M, discount). Rows are ordered by
/// (M, eps index).
std::vector<RateRow> rate_per_pseudosample(const BenchConfig& config);

std::vector<RateRow> rate_per_pseudosample(const BenchConfig& config, const ModelSpec& model,
                                           const ProposalSpec& proposal, std::span<const double> init);

struct CalibrationResult {
    double epsilon = 0.0;
    double acc_rate = 0.0;
    double target = 0.0;
    std::size_t evaluations = 0;
};

inline constexpr double kCalibrationLow = 1e-6;
inline constexpr double kCalibrationHigh = 1e3;

/// Bisection on log eps for the bandwidth whose pm_mcmc acceptance rate
/// equals target_rate * cost_per_iteration(M, discount). Every evaluation
/// reuses the same random stream, so successive runs differ only through eps.
CalibrationResult calibrate_epsilon(const BenchConfig& config, std::size_t m);

CalibrationResult calibrate_epsilon(const BenchConfig& config, std::size_t m,
                                    const ModelSpec& model, const ProposalSpec& proposal,
                                    std::span<const double> init);

struct CalibratedRow {
    std::size_t m = 1;
    double discount = 1.0;
    double epsilon = 0.0;
    double target = 0.0;
    double acc_rate = 0.0;
    std::uint64_t seed = 0;
};

/// Calibrated eps over m_grid x discount_grid, ordered by (discount, M).
std::vector<CalibratedRow> fig1_right(const BenchConfig& config);

enum class SweepVariable { y_obs, sigma_y };

std::string to_string(SweepVariable v);

struct SweepRow {
    SweepVariable variable = SweepVariable::y_obs;
    double value = 0.0;
    std::size_t m = 1;
    double epsilon = 0.0;
    double normalized_epsilon = 1.0;
    std::uint64_t seed = 0;
};

/// Calibrated eps over m_grid for each curve value, discount fixed at 8,
/// normalised by the curve's M = 1 value. Ordered by (value, M).
std::vector<SweepRow> fig2_sweep(const BenchConfig& config, SweepVariable vary,
                                 const std::vector<double>& values);

std::vector<double> default_sweep_values(SweepVariable vary);

}  // namespace abcmc

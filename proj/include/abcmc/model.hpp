#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>
#include <vector>

#include "abcmc/rng.hpp"

namespace abcmc {

using Parameter = std::vector<double>;

/// A likelihood-free model: prior, simulator, summary statistic and distance,
/// plus the observed summary. Pseudo-data and summaries are written into
/// caller-owned buffers so the inner sampling loops never allocate.
struct ModelSpec {
    std::size_t param_dim = 1;
    std::size_t data_dim = 1;
    std::size_t summary_dim = 1;

    std::function<void(RngStream&, std::span<double> theta)> prior_sample;
    std::function<double(std::span<const double> theta)> prior_density;
    std::function<void(std::span<const double> theta, RngStream&, std::span<double> y)> simulate;
    std::function<void(std::span<const double> y, std::span<double> s)> summary;
    /// Defaults to the Euclidean norm of the difference when left empty.
    std::function<double(std::span<const double> a, std::span<const double> b)> distance;

    std::vector<double> observed_summary;

    /// Throws ConfigError when a required callable is missing or dimensions
    /// disagree with the observed summary.
    void validate() const;
};

double euclidean_distance(std::span<const double> a, std::span<const double> b);

enum class KernelKind { uniform, gaussian };

std::string_view to_string(KernelKind kind);
KernelKind kernel_kind_from_string(std::string_view name);

/// Smoothing kernel with bandwidth and an explicit upper bound c >= sup K.
struct KernelSpec {
    KernelKind kind = KernelKind::uniform;
    double bandwidth = 1.0;
    double sup_bound = 1.0;

    static KernelSpec uniform(double bandwidth);
    static KernelSpec gaussian(double bandwidth);

    void validate() const;
};

/// K evaluated at a summary difference of norm `distance`.
/// Uniform: 1 if distance < bandwidth (strict), else 0.
/// Gaussian: exp(-distance^2 / (2 bandwidth^2)).
double kernel_at_distance(const KernelSpec& kernel, double distance);

/// K(s) with s a summary-difference vector, using its Euclidean norm.
double kernel_eval(const KernelSpec& kernel, std::span<const double> s);

struct WeightEstimate {
    double value = 0.0;
    std::size_t pseudo_samples_used = 0;
};

/// Reusable buffers for weight evaluation.
struct SimulationScratch {
    std::vector<double> data;
    std::vector<double> summary;

    explicit SimulationScratch(const ModelSpec& model)
        : data(model.data_dim), summary(model.summary_dim) {}
};

/// Draws one pseudo-sample at theta and returns the kernel value against the
/// observed summary.
double simulate_kernel(const ModelSpec& model, const KernelSpec& kernel,
                       std::span<const double> theta, RngStream& rng,
                       SimulationScratch& scratch);

/// Sum of kernel values over `m` independent pseudo-samples at theta.
double kernel_sum(const ModelSpec& model, const KernelSpec& kernel,
                  std::span<const double> theta, std::size_t m, RngStream& rng,
                  SimulationScratch& scratch);

/// Unbiased weight pi(theta) * (1/M) * sum_i K(eta(y_obs) - eta(y_i)).
WeightEstimate abc_weight(const ModelSpec& model, const KernelSpec& kernel,
                          std::span<const double> theta, std::size_t m, RngStream& rng);

WeightEstimate abc_weight(const ModelSpec& model, const KernelSpec& kernel,
                          std::span<const double> theta, std::size_t m, RngStream& rng,
                          SimulationScratch& scratch);

}  // namespace abcmc

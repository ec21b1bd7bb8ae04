#include "abcmc/model.hpp"

#include <cmath>
#include <string>

#include "abcmc/errors.hpp"

namespace abcmc {

void ModelSpec::validate() const {
    if (!prior_sample || !prior_density || !simulate || !summary)
        throw ConfigError("model is missing a prior, simulator or summary callable");
    if (param_dim == 0 || data_dim == 0 || summary_dim == 0)
        throw ConfigError("model dimensions must be positive");
    if (observed_summary.size() != summary_dim)
        throw ConfigError("observed summary has length " + std::to_string(observed_summary.size()) +
                          ", expected " + std::to_string(summary_dim));
}

double euclidean_distance(std::span<const double> a, std::span<const double> b) {
    double acc = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        acc += d * d;
    }
    return std::sqrt(acc);
}

std::string_view to_string(KernelKind kind) {
    return kind == KernelKind::uniform ? "uniform" : "gaussian";
}

KernelKind kernel_kind_from_string(std::string_view name) {
    if (name == "uniform") return KernelKind::uniform;
    if (name == "gaussian") return KernelKind::gaussian;
    throw ConfigError("unknown kernel kind '" + std::string(name) + "'");
}

KernelSpec KernelSpec::uniform(double bandwidth) {
    return KernelSpec{KernelKind::uniform, bandwidth, 1.0};
}

KernelSpec KernelSpec::gaussian(double bandwidth) {
    // K(0) = 1 is the supremum; any larger bound is also valid.
    return KernelSpec{KernelKind::gaussian, bandwidth, 1.0};
}

void KernelSpec::validate() const {
    if (!(bandwidth > 0.0) || !std::isfinite(bandwidth))
        throw ConfigError("kernel bandwidth must be positive and finite");
    if (!(sup_bound > 0.0))
        throw ConfigError("kernel sup_bound must be positive");
    if (sup_bound < 1.0)
        throw ConfigError("kernel sup_bound must be at least sup K = 1");
}

double kernel_at_distance(const KernelSpec& kernel, double distance) {
    if (!(kernel.bandwidth > 0.0)) throw ConfigError("kernel bandwidth must be positive");
    switch (kernel.kind) {
        case KernelKind::uniform:
            return distance < kernel.bandwidth ? 1.0 : 0.0;
        case KernelKind::gaussian: {
            const double z = distance / kernel.bandwidth;
            return std::exp(-0.5 * z * z);
        }
    }
    return 0.0;
}

double kernel_eval(const KernelSpec& kernel, std::span<const double> s) {
    double acc = 0.0;
    for (double v : s) acc += v * v;
    return kernel_at_distance(kernel, std::sqrt(acc));
}

double simulate_kernel(const ModelSpec& model, const KernelSpec& kernel,
                       std::span<const double> theta, RngStream& rng,
                       SimulationScratch& scratch) {
    model.simulate(theta, rng, scratch.data);
    model.summary(scratch.data, scratch.summary);
    const double d = model.distance ? model.distance(model.observed_summary, scratch.summary)
                                    : euclidean_distance(model.observed_summary, scratch.summary);
    return kernel_at_distance(kernel, d);
}

double kernel_sum(const ModelSpec& model, const KernelSpec& kernel,
                  std::span<const double> theta, std::size_t m, RngStream& rng,
                  SimulationScratch& scratch) {
    double sum = 0.0;
    for (std::size_t i = 0; i < m; ++i) sum += simulate_kernel(model, kernel, theta, rng, scratch);
    return sum;
}

WeightEstimate abc_weight(const ModelSpec& model, const KernelSpec& kernel,
                          std::span<const double> theta, std::size_t m, RngStream& rng,
                          SimulationScratch& scratch) {
    if (m == 0) throw ConfigError("number of pseudo-samples M must be at least 1");
    const double prior = model.prior_density(theta);
    const double sum = kernel_sum(model, kernel, theta, m, rng, scratch);
    return WeightEstimate{prior * sum / static_cast<double>(m), m};
}

WeightEstimate abc_weight(const ModelSpec& model, const KernelSpec& kernel,
                          std::span<const double> theta, std::size_t m, RngStream& rng) {
    SimulationScratch scratch(model);
    return abc_weight(model, kernel, theta, m, rng, scratch);
}

}  // namespace abcmc

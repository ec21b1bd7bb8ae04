#pragma once

#include <cstddef>
#include <span>

#include "abcmc/samplers.hpp"

namespace abcmc {

/// Batch-means estimate of the asymptotic variance v(f, H).
struct VarianceEstimate {
    double value = 0.0;
    std::size_t n_used = 0;
    std::size_t batch_size = 0;
    std::size_t n_batches = 0;
    /// sqrt(value / n_used): Monte Carlo standard error of the sample mean.
    double standard_error_of_mean = 0.0;
};

/// Non-overlapping batch means with batch size floor(sqrt(n)). Leading values
/// that do not fill a whole batch are dropped. Requires n >= 100.
///
/// No attempt is made to detect chains whose asymptotic variance is infinite;
/// the estimator then reports a finite but meaningless number.
VarianceEstimate asymptotic_variance(std::span<const double> values);

/// Unbiased sample variance. Requires n >= 2.
double iid_variance(std::span<const double> values);

double mean(std::span<const double> values);

/// Fraction of non-holding iterations (or rejection proposals) that were accepted.
double acceptance_rate(const Trace& trace);

/// 0/1 acceptance indicators over non-holding iterations.
std::vector<double> acceptance_indicators(const Trace& trace);

}  // namespace abcmc

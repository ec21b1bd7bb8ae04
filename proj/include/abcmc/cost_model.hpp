#pragma once

#include <cstddef>

namespace abcmc {

/// Running-time functionals for reaching Monte Carlo variance `target_variance`.
///
/// Two distinct constants are kept apart here: `target_variance` is the
/// accuracy goal, `discount` (>= 1) the cost reduction applied to every
/// pseudo-sample after the first within one iteration.
struct CostReport {
    /// Pseudo-samples drawn on one processor.
    double serial = 0.0;
    /// Iterations of one chain whose M pseudo-samples are drawn in parallel.
    double parallel_single_chain = 0.0;
    /// Iterations of each of M independent single-sample chains.
    double parallel_multi_chain = 0.0;
    double target_variance = 1.0;
    std::size_t m = 1;
    double discount = 1.0;
};

/// 1 + (M - 1) / discount.
double cost_per_iteration(std::size_t m, double discount);

/// Costs of pseudo-marginal MCMC given v(f, Q_M) and v(f, Q_1).
CostReport mcmc_costs(double v_m, double v_1, std::size_t m, double target_variance,
                      double discount = 1.0);

/// Costs of ABC rejection given its marginal acceptance probability (which
/// does not depend on M) and the i.i.d. variance v(f).
CostReport rejection_costs(double p_acc, double v_f, std::size_t m, double target_variance);

}  // namespace abcmc

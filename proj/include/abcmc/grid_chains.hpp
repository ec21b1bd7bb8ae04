#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abcmc/finite_chain.hpp"

namespace abcmc {

/// Discretised ABC problem: parameter grid, prior mass on it, the per-point
/// probability tau that one pseudo-sample hits the uniform kernel, and a
/// proposal matrix on grid indices.
struct GridModel {
    std::string name;
    std::vector<double> theta_grid;
    std::vector<double> prior_probs;
    std::vector<double> tau;
    Eigen::MatrixXd proposal_probs;

    std::size_t size() const noexcept { return theta_grid.size(); }

    /// Shape, probability and irreducibility checks; throws ConfigError or
    /// ReducibilityError.
    void validate() const;
};

/// Independence proposal whose every row is `probs`.
Eigen::MatrixXd independence_proposal_matrix(const std::vector<double>& probs);

/// Nearest-neighbour walk: move to i - 1 or i + 1 with probability 1/2 each,
/// staying put when the move would leave the grid.
Eigen::MatrixXd neighbour_walk_proposal_matrix(std::size_t n);

/// Pseudo-marginal chain with the M-sample uniform-kernel weight on the
/// augmented space {(i, j) : j = 1..M}, weight prior_i * j / M. Proposals
/// whose hit count is 0 are rejected, so j = 0 is never entered. The
/// numerically solved stationary vector is checked against the analytic
/// form prior_i * Bin(j; M, tau_i) * j / M (normalised) to 1e-10.
FiniteChain build_pm_chain(const GridModel& g, std::size_t m, double laziness = 0.0);

/// Metropolis-Hastings on the grid with the exact smoothed likelihood tau.
FiniteChain build_ideal_chain(const GridModel& g);

/// Alternative ABC-MCMC marginalised over its single pseudo-sample:
/// acceptance tau_{i'} * min{1, prior_{i'} q(i' -> i) / (prior_i q(i -> i'))}.
FiniteChain build_alt_chain(const GridModel& g);

/// Pseudo-marginal chain driven by the alpha-handicapped M-sample weight
/// (zero with probability alpha, otherwise inflated by 1 / (1 - alpha)).
FiniteChain handicap_chain(const GridModel& g, std::size_t m, double alpha);

/// Stationary probability that a proposed move i -> i' is accepted by the
/// M-sample pseudo-marginal chain, averaging over the current hit count.
/// Computed without building the augmented chain, so large M is cheap.
Eigen::MatrixXd pm_acceptance_matrix(const GridModel& g, std::size_t m);

/// Acceptance probability of the ideal chain for each proposed move.
Eigen::MatrixXd ideal_acceptance_matrix(const GridModel& g);

/// Randomised instance: size n in [5, 25], tau in [0.02, 1], random prior
/// bounded away from zero; even seeds use an independence proposal, odd
/// seeds the neighbour walk.
GridModel random_grid_model(std::uint64_t seed, std::size_t n);

}  // namespace abcmc

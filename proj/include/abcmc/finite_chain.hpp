#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "abcmc/rng.hpp"

namespace abcmc {

/// One state of an augmented pseudo-marginal chain: grid index and hit
/// count. Plain grid chains use hits = 0.
struct ChainStateIndex {
    std::size_t theta = 0;
    std::size_t hits = 0;
};

/// Explicit finite Markov chain with its stationary distribution.
struct FiniteChain {
    std::vector<ChainStateIndex> states;
    Eigen::MatrixXd transition;
    Eigen::VectorXd stationary;

    std::size_t size() const noexcept { return states.size(); }

    /// Lifts a function of the grid index to the (possibly augmented) states.
    Eigen::VectorXd lift(const std::vector<double>& f_on_grid) const;

    /// Marginal of the stationary vector on grid indices [0, n_grid).
    Eigen::VectorXd theta_marginal(std::size_t n_grid) const;
};

/// Stationary vector as the normalised left null vector of I - P, via a dense
/// LU solve with one equation replaced by the normalisation constraint.
/// Throws ReducibilityError when the system is singular.
Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& transition);

/// Rows sum to 1 within `tol` and entries are nonnegative.
bool is_row_stochastic(const Eigen::MatrixXd& transition, double tol = 1e-12);

/// Max |pi_i P_ij - pi_j P_ji|.
double detailed_balance_residual(const FiniteChain& chain);

/// Max |(pi P - pi)_j|.
double stationarity_residual(const FiniteChain& chain);

/// lambda I + (1 - lambda) P with the same stationary vector.
FiniteChain lazy(const FiniteChain& chain, double laziness);

/// Exact v(f, P) = <fbar, (2Z - I) fbar>_pi with Z = (I - P + 1 pi)^{-1}.
/// Values in [-1e-10, 0) are clamped to 0.
double asymptotic_variance_exact(const FiniteChain& chain, const Eigen::VectorXd& f);

/// Same, for several functions sharing one factorisation.
std::vector<double> asymptotic_variances_exact(const FiniteChain& chain,
                                               const std::vector<Eigen::VectorXd>& fs);

/// Variance of f under the stationary law.
double stationary_variance(const FiniteChain& chain, const Eigen::VectorXd& f);

/// All eigenvalues of D^{1/2} P D^{-1/2} (D = diag(pi)), ascending.
/// Throws NotReversibleError if detailed balance fails beyond 1e-10.
Eigen::VectorXd reversible_spectrum(const FiniteChain& chain);

/// True iff every eigenvalue of the symmetrised kernel is >= -1e-10.
bool is_nonnegative_definite(const FiniteChain& chain);

/// Simulates `n` steps from `start`, returning visited state indices
/// (the start state is not included).
std::vector<std::uint32_t> simulate_chain(const FiniteChain& chain, std::size_t start,
                                          std::size_t n, RngStream& rng);

/// Two-state chain flipping 0 -> 1 with probability a and 1 -> 0 with b.
FiniteChain two_state_chain(double a, double b);

}  // namespace abcmc

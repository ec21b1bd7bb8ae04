#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace abcmc {

/// Finite-support law with strictly increasing support.
class DiscreteDistribution {
public:
    /// Throws ConfigError unless probs >= 0, sum to 1 within 1e-12, and the
    /// support is strictly increasing.
    DiscreteDistribution(std::vector<double> support, std::vector<double> probs);

    /// Sorts atoms and merges equal values before validating.
    static DiscreteDistribution from_atoms(std::vector<std::pair<double, double>> atoms);

    static DiscreteDistribution point_mass(double x);

    const std::vector<double>& support() const noexcept { return support_; }
    const std::vector<double>& probs() const noexcept { return probs_; }
    std::size_t size() const noexcept { return support_.size(); }

    double mean() const;
    /// E|X - c|.
    double mean_abs_deviation(double c) const;

private:
    std::vector<double> support_;
    std::vector<double> probs_;
};

/// Binomial(M, tau) probability of k successes.
double binomial_pmf(std::size_t m, std::size_t k, double tau);

/// X <=cx Y for finite laws: equal means (1e-12) and E|X - c| <= E|Y - c| + 1e-12
/// at every support point of either law. Both sides are piecewise linear in
/// c with kinks only at support points, so those are the only c that matter.
bool convex_order_leq(const DiscreteDistribution& x, const DiscreteDistribution& y);

/// Law of the normalised handicapped M-sample uniform-kernel weight: 0 with
/// probability alpha, otherwise Bin(M, tau) / (M (1 - alpha)). Its mean is tau.
DiscreteDistribution binomial_mixture(std::size_t m, double tau, double alpha);

}  // namespace abcmc

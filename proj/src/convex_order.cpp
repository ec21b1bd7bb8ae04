#include "abcmc/convex_order.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "abcmc/errors.hpp"

namespace abcmc {

namespace {
constexpr double kTol = 1e-12;
}

DiscreteDistribution::DiscreteDistribution(std::vector<double> support, std::vector<double> probs)
    : support_(std::move(support)), probs_(std::move(probs)) {
    if (support_.empty()) throw ConfigError("distribution support is empty");
    if (support_.size() != probs_.size())
        throw ConfigError("support and probability vectors differ in length");
    double total = 0.0;
    for (std::size_t i = 0; i < probs_.size(); ++i) {
        if (!(probs_[i] >= 0.0)) throw ConfigError("negative probability in distribution");
        if (i > 0 && !(support_[i] > support_[i - 1]))
            throw ConfigError("distribution support must be strictly increasing");
        total += probs_[i];
    }
    if (std::abs(total - 1.0) > kTol)
        throw ConfigError("distribution probabilities sum to " + std::to_string(total));
}

DiscreteDistribution DiscreteDistribution::from_atoms(std::vector<std::pair<double, double>> atoms) {
    std::sort(atoms.begin(), atoms.end());
    std::vector<double> support, probs;
    for (const auto& [x, p] : atoms) {
        if (!support.empty() && support.back() == x) {
            probs.back() += p;
        } else {
            support.push_back(x);
            probs.push_back(p);
        }
    }
    return DiscreteDistribution(std::move(support), std::move(probs));
}

DiscreteDistribution DiscreteDistribution::point_mass(double x) {
    return DiscreteDistribution({x}, {1.0});
}

double DiscreteDistribution::mean() const {
    double acc = 0.0;
    for (std::size_t i = 0; i < size(); ++i) acc += probs_[i] * support_[i];
    return acc;
}

double DiscreteDistribution::mean_abs_deviation(double c) const {
    double acc = 0.0;
    for (std::size_t i = 0; i < size(); ++i) acc += probs_[i] * std::abs(support_[i] - c);
    return acc;
}

double binomial_pmf(std::size_t m, std::size_t k, double tau) {
    if (k > m) return 0.0;
    if (tau <= 0.0) return k == 0 ? 1.0 : 0.0;
    if (tau >= 1.0) return k == m ? 1.0 : 0.0;
    const double n = static_cast<double>(m), x = static_cast<double>(k);
    const double log_choose = std::lgamma(n + 1.0) - std::lgamma(x + 1.0) - std::lgamma(n - x + 1.0);
    return std::exp(log_choose + x * std::log(tau) + (n - x) * std::log1p(-tau));
}

bool convex_order_leq(const DiscreteDistribution& x, const DiscreteDistribution& y) {
    if (std::abs(x.mean() - y.mean()) > kTol) return false;
    auto dominated = [&](double c) {
        return x.mean_abs_deviation(c) <= y.mean_abs_deviation(c) + kTol;
    };
    return std::all_of(x.support().begin(), x.support().end(), dominated) &&
           std::all_of(y.support().begin(), y.support().end(), dominated);
}

DiscreteDistribution binomial_mixture(std::size_t m, double tau, double alpha) {
    if (m == 0) throw ConfigError("M must be at least 1");
    if (!(tau >= 0.0 && tau <= 1.0)) throw ConfigError("tau must lie in [0, 1]");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in [0, 1)");
    std::vector<std::pair<double, double>> atoms;
    atoms.reserve(m + 1);
    const double keep = 1.0 - alpha;
    const double scale = 1.0 / (static_cast<double>(m) * keep);
    atoms.emplace_back(0.0, alpha + keep * binomial_pmf(m, 0, tau));
    for (std::size_t k = 1; k <= m; ++k)
        atoms.emplace_back(static_cast<double>(k) * scale, keep * binomial_pmf(m, k, tau));
    return DiscreteDistribution::from_atoms(std::move(atoms));
}

}  // namespace abcmc

#include "abcmc/grid_chains.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

#include "abcmc/convex_order.hpp"
#include "abcmc/errors.hpp"
#include "abcmc/rng.hpp"

namespace abcmc {

namespace {

constexpr double kStationaryTol = 1e-10;

bool strongly_connected(const Eigen::MatrixXd& q) {
    const auto n = q.rows();
    auto reach_all = [&](bool transpose) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        std::queue<Eigen::Index> todo;
        todo.push(0);
        seen[0] = 1;
        Eigen::Index count = 1;
        while (!todo.empty()) {
            const auto i = todo.front();
            todo.pop();
            for (Eigen::Index j = 0; j < n; ++j) {
                const double w = transpose ? q(j, i) : q(i, j);
                if (w > 0.0 && !seen[static_cast<std::size_t>(j)]) {
                    seen[static_cast<std::size_t>(j)] = 1;
                    ++count;
                    todo.push(j);
                }
            }
        }
        return count == n;
    };
    return reach_all(false) && reach_all(true);
}

/// A weight level at grid point i: weight prior_i * value, drawn with
/// probability prob when i is proposed. Level probabilities may sum to less
/// than one; the remainder is a zero weight.
struct WeightLevel {
    std::size_t hits;
    double value;
    double prob;
};

/// Pseudo-marginal chain for arbitrary finite positive weight laws.
FiniteChain build_weighted_chain(const GridModel& g,
                                 const std::vector<std::vector<WeightLevel>>& levels) {
    FiniteChain chain;
    std::vector<std::size_t> offset(g.size() + 1, 0);
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (const auto& lvl : levels[i]) chain.states.push_back({i, lvl.hits});
        offset[i + 1] = chain.states.size();
    }
    const auto n = static_cast<Eigen::Index>(chain.states.size());
    chain.transition = Eigen::MatrixXd::Zero(n, n);
    const Eigen::MatrixXd& q = g.proposal_probs;

    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t a = 0; a < levels[i].size(); ++a) {
            const auto from = static_cast<Eigen::Index>(offset[i] + a);
            const double w_from = g.prior_probs[i] * levels[i][a].value;
            for (std::size_t k = 0; k < g.size(); ++k) {
                const double q_fwd = q(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k));
                if (q_fwd == 0.0) continue;
                const double q_back = q(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(i));
                for (std::size_t b = 0; b < levels[k].size(); ++b) {
                    const auto to = static_cast<Eigen::Index>(offset[k] + b);
                    if (to == from) continue;
                    const double w_to = g.prior_probs[k] * levels[k][b].value;
                    const double accept = std::min(1.0, (w_to * q_back) / (w_from * q_fwd));
                    chain.transition(from, to) += q_fwd * levels[k][b].prob * accept;
                }
            }
        }
    }
    for (Eigen::Index s = 0; s < n; ++s)
        chain.transition(s, s) = std::max(0.0, 1.0 - chain.transition.row(s).sum());

    chain.stationary = stationary_distribution(chain.transition);

    Eigen::VectorXd analytic(n);
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t a = 0; a < levels[i].size(); ++a)
            analytic[static_cast<Eigen::Index>(offset[i] + a)] =
                g.prior_probs[i] * levels[i][a].prob * levels[i][a].value;
    analytic /= analytic.sum();
    const double gap = (analytic - chain.stationary).cwiseAbs().maxCoeff();
    if (gap > kStationaryTol)
        throw std::logic_error("numerical and analytic stationary vectors differ by " +
                               std::to_string(gap));
    // The closed form keeps full relative precision in the tiny entries.
    chain.stationary = analytic;
    return chain;
}

std::vector<std::vector<WeightLevel>> binomial_levels(const GridModel& g, std::size_t m,
                                                      double alpha) {
    std::vector<std::vector<WeightLevel>> levels(g.size());
    const double keep = 1.0 - alpha;
    for (std::size_t i = 0; i < g.size(); ++i) {
        for (std::size_t j = 1; j <= m; ++j) {
            levels[i].push_back({j, static_cast<double>(j) / (static_cast<double>(m) * keep),
                                 keep * binomial_pmf(m, j, g.tau[i])});
        }
    }
    return levels;
}

}  // namespace

void GridModel::validate() const {
    const std::size_t n = theta_grid.size();
    if (n == 0) throw ConfigError("grid model '" + name + "' is empty");
    if (prior_probs.size() != n || tau.size() != n || proposal_probs.rows() != static_cast<Eigen::Index>(n) ||
        proposal_probs.cols() != static_cast<Eigen::Index>(n))
        throw ConfigError("grid model '" + name + "' has inconsistent dimensions");
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(prior_probs[i] > 0.0)) throw ConfigError("grid prior must be positive");
        if (!(tau[i] >= 0.0 && tau[i] <= 1.0)) throw ConfigError("tau must lie in [0, 1]");
        if (tau[i] == 0.0)
            throw ReducibilityError("tau is zero at grid point " + std::to_string(i) +
                                    "; the pseudo-marginal chain is reducible");
        total += prior_probs[i];
    }
    if (std::abs(total - 1.0) > 1e-12) throw ConfigError("grid prior must sum to 1");
    if (!is_row_stochastic(proposal_probs)) throw ConfigError("proposal matrix is not row-stochastic");
    if (!strongly_connected(proposal_probs))
        throw ReducibilityError("proposal matrix is not irreducible");
}

Eigen::MatrixXd independence_proposal_matrix(const std::vector<double>& probs) {
    const auto n = static_cast<Eigen::Index>(probs.size());
    Eigen::MatrixXd q(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) q(i, j) = probs[static_cast<std::size_t>(j)];
    return q;
}

Eigen::MatrixXd neighbour_walk_proposal_matrix(std::size_t n) {
    const auto size = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd q = Eigen::MatrixXd::Zero(size, size);
    for (Eigen::Index i = 0; i < size; ++i) {
        q(i, i > 0 ? i - 1 : i) += 0.5;
        q(i, i + 1 < size ? i + 1 : i) += 0.5;
    }
    return q;
}

FiniteChain build_pm_chain(const GridModel& g, std::size_t m, double laziness) {
    g.validate();
    if (m == 0) throw ConfigError("M must be at least 1");
    FiniteChain chain = build_weighted_chain(g, binomial_levels(g, m, 0.0));
    return laziness > 0.0 ? lazy(chain, laziness) : chain;
}

FiniteChain handicap_chain(const GridModel& g, std::size_t m, double alpha) {
    g.validate();
    if (m == 0) throw ConfigError("M must be at least 1");
    if (!(alpha >= 0.0 && alpha < 1.0)) throw ConfigError("alpha must lie in [0, 1)");
    return build_weighted_chain(g, binomial_levels(g, m, alpha));
}

FiniteChain build_ideal_chain(const GridModel& g) {
    g.validate();
    std::vector<std::vector<WeightLevel>> levels(g.size());
    for (std::size_t i = 0; i < g.size(); ++i) levels[i].push_back({0, g.tau[i], 1.0});
    return build_weighted_chain(g, levels);
}

FiniteChain build_alt_chain(const GridModel& g) {
    g.validate();
    const auto n = static_cast<Eigen::Index>(g.size());
    FiniteChain chain;
    for (std::size_t i = 0; i < g.size(); ++i) chain.states.push_back({i, 0});
    chain.transition = Eigen::MatrixXd::Zero(n, n);
    const Eigen::MatrixXd& q = g.proposal_probs;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index k = 0; k < n; ++k) {
            if (k == i || q(i, k) == 0.0) continue;
            const double mh = (g.prior_probs[static_cast<std::size_t>(k)] * q(k, i)) /
                              (g.prior_probs[static_cast<std::size_t>(i)] * q(i, k));
            chain.transition(i, k) = q(i, k) * g.tau[static_cast<std::size_t>(k)] * std::min(1.0, mh);
        }
        chain.transition(i, i) = std::max(0.0, 1.0 - chain.transition.row(i).sum());
    }
    chain.stationary = stationary_distribution(chain.transition);

    Eigen::VectorXd analytic(n);
    for (Eigen::Index i = 0; i < n; ++i)
        analytic[i] = g.prior_probs[static_cast<std::size_t>(i)] * g.tau[static_cast<std::size_t>(i)];
    analytic /= analytic.sum();
    const double gap = (analytic - chain.stationary).cwiseAbs().maxCoeff();
    if (gap > kStationaryTol)
        throw std::logic_error("alternative chain stationary vector is off by " + std::to_string(gap));
    chain.stationary = analytic;
    return chain;
}

Eigen::MatrixXd pm_acceptance_matrix(const GridModel& g, std::size_t m) {
    g.validate();
    if (m == 0) throw ConfigError("M must be at least 1");
    const std::size_t n = g.size();
    // pmf[i][j] = Bin(j; M, tau_i); cond[i][j] = stationary P(j | i) ~ pmf * j.
    std::vector<std::vector<double>> pmf(n, std::vector<double>(m + 1));
    std::vector<std::vector<double>> cond(n, std::vector<double>(m + 1, 0.0));
    for (std::size_t i = 0; i < n; ++i) {
        double z = 0.0;
        for (std::size_t j = 0; j <= m; ++j) {
            pmf[i][j] = binomial_pmf(m, j, g.tau[i]);
            cond[i][j] = pmf[i][j] * static_cast<double>(j);
            z += cond[i][j];
        }
        for (auto& c : cond[i]) c /= z;
    }
    const auto size = static_cast<Eigen::Index>(n);
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(size, size);
    const Eigen::MatrixXd& q = g.proposal_probs;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const auto ii = static_cast<Eigen::Index>(i), kk = static_cast<Eigen::Index>(k);
            if (q(ii, kk) == 0.0) continue;
            const double base = (g.prior_probs[k] * q(kk, ii)) / (g.prior_probs[i] * q(ii, kk));
            double total = 0.0;
            for (std::size_t j = 1; j <= m; ++j) {
                if (cond[i][j] == 0.0) continue;
                double inner = 0.0;
                for (std::size_t jp = 1; jp <= m; ++jp)
                    inner += pmf[k][jp] *
                             std::min(1.0, base * static_cast<double>(jp) / static_cast<double>(j));
                total += cond[i][j] * inner;
            }
            acc(ii, kk) = total;
        }
    }
    return acc;
}

Eigen::MatrixXd ideal_acceptance_matrix(const GridModel& g) {
    g.validate();
    const auto n = static_cast<Eigen::Index>(g.size());
    Eigen::MatrixXd acc = Eigen::MatrixXd::Zero(n, n);
    const Eigen::MatrixXd& q = g.proposal_probs;
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index k = 0; k < n; ++k) {
            if (q(i, k) == 0.0) continue;
            const auto si = static_cast<std::size_t>(i), sk = static_cast<std::size_t>(k);
            acc(i, k) = std::min(1.0, (g.prior_probs[sk] * g.tau[sk] * q(k, i)) /
                                          (g.prior_probs[si] * g.tau[si] * q(i, k)));
        }
    return acc;
}

GridModel random_grid_model(std::uint64_t seed, std::size_t n) {
    if (n < 2) throw ConfigError("random grid needs at least 2 points");
    RngStream rng(seed, stream_key({0x67726964ULL, n}));
    GridModel g;
    g.name = "random-" + std::to_string(seed);
    g.theta_grid.resize(n);
    g.prior_probs.resize(n);
    g.tau.resize(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        g.theta_grid[i] = -3.0 + 6.0 * static_cast<double>(i) / static_cast<double>(n - 1);
        g.prior_probs[i] = 0.05 + rng.uniform();
        total += g.prior_probs[i];
        g.tau[i] = 0.02 + 0.98 * rng.uniform();
    }
    for (auto& p : g.prior_probs) p /= total;
    if (seed % 2 == 0) {
        std::vector<double> q(n);
        double qt = 0.0;
        for (auto& v : q) {
            v = 0.05 + rng.uniform();
            qt += v;
        }
        for (auto& v : q) v /= qt;
        g.proposal_probs = independence_proposal_matrix(q);
    } else {
        g.proposal_probs = neighbour_walk_proposal_matrix(n);
    }
    return g;
}

}  // namespace abcmc

#include "abcmc/finite_chain.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "abcmc/errors.hpp"

namespace abcmc {

namespace {
constexpr double kSingularRcond = 1e-14;
}

Eigen::VectorXd FiniteChain::lift(const std::vector<double>& f_on_grid) const {
    Eigen::VectorXd f(static_cast<Eigen::Index>(size()));
    for (std::size_t s = 0; s < size(); ++s) f[static_cast<Eigen::Index>(s)] = f_on_grid.at(states[s].theta);
    return f;
}

Eigen::VectorXd FiniteChain::theta_marginal(std::size_t n_grid) const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n_grid));
    for (std::size_t s = 0; s < size(); ++s)
        out[static_cast<Eigen::Index>(states[s].theta)] += stationary[static_cast<Eigen::Index>(s)];
    return out;
}

namespace {

bool reaches_all(const Eigen::MatrixXd& p, bool transpose) {
    const Eigen::Index n = p.rows();
    std::vector<char> seen(static_cast<std::size_t>(n), 0);
    std::vector<Eigen::Index> stack{0};
    seen[0] = 1;
    Eigen::Index count = 1;
    while (!stack.empty()) {
        const Eigen::Index i = stack.back();
        stack.pop_back();
        for (Eigen::Index j = 0; j < n; ++j) {
            const double w = transpose ? p(j, i) : p(i, j);
            if (w > 0.0 && !seen[static_cast<std::size_t>(j)]) {
                seen[static_cast<std::size_t>(j)] = 1;
                ++count;
                stack.push_back(j);
            }
        }
    }
    return count == n;
}

}  // namespace

Eigen::VectorXd stationary_distribution(const Eigen::MatrixXd& transition) {
    const Eigen::Index n = transition.rows();
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - transition.transpose();
    a.row(n - 1).setOnes();
    // Irreducible chains have a unique stationary law; otherwise fall back to
    // an exact rank test (transient states are allowed).
    if (!(reaches_all(transition, false) && reaches_all(transition, true))) {
        Eigen::FullPivLU<Eigen::MatrixXd> full(a);
        if (full.rank() < n)
            throw ReducibilityError("transition matrix has no unique stationary distribution");
    }
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n);
    rhs[n - 1] = 1.0;
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    if (!(lu.rcond() > kSingularRcond))
        throw ReducibilityError("transition matrix has no unique stationary distribution");
    Eigen::VectorXd pi = lu.solve(rhs);
    if (!pi.allFinite() || (a * pi - rhs).lpNorm<Eigen::Infinity>() > 1e-8)
        throw ReducibilityError("transition matrix has no unique stationary distribution");
    for (Eigen::Index i = 0; i < n; ++i) pi[i] = std::max(pi[i], 0.0);
    return pi / pi.sum();
}

bool is_row_stochastic(const Eigen::MatrixXd& transition, double tol) {
    if ((transition.array() < 0.0).any()) return false;
    const Eigen::VectorXd sums = transition.rowwise().sum();
    return ((sums.array() - 1.0).abs() <= tol).all();
}

double detailed_balance_residual(const FiniteChain& chain) {
    const Eigen::MatrixXd flow = chain.stationary.asDiagonal() * chain.transition;
    return (flow - flow.transpose()).cwiseAbs().maxCoeff();
}

double stationarity_residual(const FiniteChain& chain) {
    const Eigen::RowVectorXd moved = chain.stationary.transpose() * chain.transition;
    return (moved - chain.stationary.transpose()).cwiseAbs().maxCoeff();
}

FiniteChain lazy(const FiniteChain& chain, double laziness) {
    if (!(laziness >= 0.0 && laziness < 1.0)) throw ConfigError("laziness must lie in [0, 1)");
    FiniteChain out = chain;
    const auto n = static_cast<Eigen::Index>(chain.size());
    out.transition = laziness * Eigen::MatrixXd::Identity(n, n) + (1.0 - laziness) * chain.transition;
    return out;
}

double stationary_variance(const FiniteChain& chain, const Eigen::VectorXd& f) {
    const double mu = chain.stationary.dot(f);
    return chain.stationary.dot((f.array() - mu).square().matrix());
}

std::vector<double> asymptotic_variances_exact(const FiniteChain& chain,
                                               const std::vector<Eigen::VectorXd>& fs) {
    const auto n = static_cast<Eigen::Index>(chain.size());
    const Eigen::VectorXd& pi = chain.stationary;
    Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) - chain.transition;
    a += Eigen::VectorXd::Ones(n) * pi.transpose();
    Eigen::PartialPivLU<Eigen::MatrixXd> lu(a);
    if (!(lu.rcond() > kSingularRcond))
        throw ReducibilityError("I - P + 1 pi is singular; chain is reducible");

    std::vector<double> out;
    out.reserve(fs.size());
    for (const auto& f : fs) {
        if (f.size() != n) throw ConfigError("function length does not match the chain");
        const Eigen::VectorXd fbar = f.array() - pi.dot(f);
        const Eigen::VectorXd zf = lu.solve(fbar);
        const Eigen::VectorXd weighted = pi.cwiseProduct(fbar);
        const double v = 2.0 * weighted.dot(zf) - weighted.dot(fbar);
        if (v < -1e-10)
            throw ReducibilityError("negative asymptotic variance " + std::to_string(v) +
                                    "; chain is not reversible or numerically degenerate");
        out.push_back(std::max(v, 0.0));
    }
    return out;
}

double asymptotic_variance_exact(const FiniteChain& chain, const Eigen::VectorXd& f) {
    return asymptotic_variances_exact(chain, {f}).front();
}

Eigen::VectorXd reversible_spectrum(const FiniteChain& chain) {
    if (detailed_balance_residual(chain) > 1e-10)
        throw NotReversibleError("chain violates detailed balance");
    // Under detailed balance D^(1/2) P D^(-1/2) has entries sqrt(P_ij P_ji), which
    // avoids dividing by tiny stationary masses.
    const Eigen::MatrixXd& p = chain.transition;
    const Eigen::MatrixXd s = (p.cwiseProduct(p.transpose())).cwiseSqrt();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(s, Eigen::EigenvaluesOnly);
    return solver.eigenvalues();
}

bool is_nonnegative_definite(const FiniteChain& chain) {
    return reversible_spectrum(chain).minCoeff() >= -1e-10;
}

std::vector<std::uint32_t> simulate_chain(const FiniteChain& chain, std::size_t start,
                                          std::size_t n, RngStream& rng) {
    const auto size = static_cast<Eigen::Index>(chain.size());
    if (start >= chain.size()) throw ConfigError("start state out of range");
    // Cumulative rows for inverse-CDF sampling.
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> cum = chain.transition;
    for (Eigen::Index i = 0; i < size; ++i)
        for (Eigen::Index j = 1; j < size; ++j) cum(i, j) += cum(i, j - 1);

    std::vector<std::uint32_t> path(n);
    auto s = static_cast<Eigen::Index>(start);
    for (std::size_t t = 0; t < n; ++t) {
        const double* row = cum.data() + s * size;
        const double u = rng.uniform() * row[size - 1];
        const auto it = std::upper_bound(row, row + size - 1, u);
        s = static_cast<Eigen::Index>(it - row);
        path[t] = static_cast<std::uint32_t>(s);
    }
    return path;
}

FiniteChain two_state_chain(double a, double b) {
    if (!(a > 0.0 && a <= 1.0 && b > 0.0 && b <= 1.0))
        throw ConfigError("flip probabilities must lie in (0, 1]");
    FiniteChain c;
    c.states = {{0, 0}, {1, 0}};
    c.transition.resize(2, 2);
    c.transition << 1.0 - a, a, b, 1.0 - b;
    c.stationary.resize(2);
    c.stationary << b / (a + b), a / (a + b);
    return c;
}

}  // namespace abcmc

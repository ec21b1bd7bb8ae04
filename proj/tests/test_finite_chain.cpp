#include <cmath>

#include <gtest/gtest.h>

#include "abcmc/errors.hpp"
#include "abcmc/finite_chain.hpp"
#include "abcmc/rng.hpp"
#include "oracles.hpp"

using namespace abcmc;

namespace {

// Random reversible chain: symmetric weights normalised by row.
FiniteChain random_reversible(RngStream& r, std::size_t n, double hold = 0.0) {
    Eigen::MatrixXd w(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j <= i; ++j) w(i, j) = w(j, i) = 0.05 + r.uniform();
    FiniteChain c;
    c.transition = w.array().colwise() / w.rowwise().sum().array();
    c.states.resize(n);
    for (std::size_t i = 0; i < n; ++i) c.states[i] = {i, 1};
    c.stationary = stationary_distribution(c.transition);
    return hold > 0 ? lazy(c, hold) : c;
}

std::vector<std::vector<double>> rows(const Eigen::MatrixXd& p) {
    std::vector<std::vector<double>> out(p.rows(), std::vector<double>(p.cols()));
    for (int i = 0; i < p.rows(); ++i)
        for (int j = 0; j < p.cols(); ++j) out[i][j] = p(i, j);
    return out;
}

std::vector<double> vec(const Eigen::VectorXd& v) { return {v.data(), v.data() + v.size()}; }

}  // namespace

TEST(FiniteChain, TwoStateClosedForm) {
    const FiniteChain c = two_state_chain(0.1, 0.1);
    Eigen::VectorXd f(2);
    f << 0, 1;
    EXPECT_NEAR(asymptotic_variance_exact(c, f), 2.25, 1e-12);
    EXPECT_NEAR(oracle::autocovariance_variance(rows(c.transition), vec(c.stationary), vec(f)), 2.25, 1e-9);
    EXPECT_NEAR(stationary_variance(c, f), 0.25, 1e-15);
}

TEST(FiniteChain, TwoStateAsymmetric) {
    // pi = (b, a) / (a + b), lambda = 1 - a - b.
    const double a = 0.3, b = 0.05;
    const FiniteChain c = two_state_chain(a, b);
    EXPECT_NEAR(c.stationary(0), b / (a + b), 1e-14);
    Eigen::VectorXd f(2);
    f << 0, 1;
    const double var = a * b / ((a + b) * (a + b)), lam = 1 - a - b;
    EXPECT_NEAR(asymptotic_variance_exact(c, f), var * (1 + lam) / (1 - lam), 1e-12);
}

TEST(FiniteChain, IidChainGivesStationaryVariance) {
    Eigen::VectorXd pi(4);
    pi << 0.1, 0.2, 0.3, 0.4;
    FiniteChain c;
    c.transition = pi.transpose().replicate(4, 1);
    c.states = {{0, 1}, {1, 1}, {2, 1}, {3, 1}};
    c.stationary = stationary_distribution(c.transition);
    EXPECT_LT((c.stationary - pi).cwiseAbs().maxCoeff(), 1e-14);
    Eigen::VectorXd f(4);
    f << 1, -2, 0.5, 3;
    EXPECT_NEAR(asymptotic_variance_exact(c, f), stationary_variance(c, f), 1e-12);
    EXPECT_NEAR(asymptotic_variance_exact(c, Eigen::VectorXd::Constant(4, 2.0)), 0.0, 1e-14);
    EXPECT_TRUE(is_nonnegative_definite(c));
}

TEST(FiniteChain, SpectrumOfOscillatingChain) {
    const FiniteChain c = two_state_chain(0.9, 0.9);
    const Eigen::VectorXd ev = reversible_spectrum(c);
    EXPECT_NEAR(ev.minCoeff(), -0.8, 1e-12);
    EXPECT_NEAR(ev.maxCoeff(), 1.0, 1e-12);
    EXPECT_FALSE(is_nonnegative_definite(c));
    EXPECT_TRUE(is_nonnegative_definite(lazy(c, 0.5)));
}

TEST(FiniteChain, RandomReversibleMatchesAutocovarianceOracle) {
    RngStream r(1, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const FiniteChain c = random_reversible(r, 2 + trial % 7, trial % 2 ? 0.3 : 0.0);
        ASSERT_TRUE(is_row_stochastic(c.transition));
        ASSERT_LT(stationarity_residual(c), 1e-12);
        ASSERT_LT(detailed_balance_residual(c), 1e-12);
        Eigen::VectorXd f(c.size());
        for (auto& v : f) v = r.normal();
        const double exact = asymptotic_variance_exact(c, f);
        const double ref = oracle::autocovariance_variance(rows(c.transition), vec(c.stationary), vec(f));
        ASSERT_NEAR(exact, ref, 1e-9 * std::max(1.0, ref)) << "trial " << trial;
    }
}

TEST(FiniteChain, StationaryMatchesPowerIteration) {
    RngStream r(2, 0);
    Eigen::MatrixXd p(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) p(i, j) = r.uniform();
    p = p.array().colwise() / p.rowwise().sum().array();
    Eigen::RowVectorXd x = Eigen::RowVectorXd::Constant(5, 0.2);
    for (int k = 0; k < 2000; ++k) x = x * p;
    EXPECT_LT((stationary_distribution(p).transpose() - x).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(FiniteChain, LazyNonnegativeDefinite) {
    RngStream r(3, 0);
    for (int trial = 0; trial < 30; ++trial) {
        const FiniteChain c = random_reversible(r, 3 + trial % 10);
        ASSERT_TRUE(is_nonnegative_definite(lazy(c, 0.5)));
        ASSERT_TRUE(is_nonnegative_definite(lazy(c, 0.75)));
    }
}

TEST(FiniteChain, LazyMixtureVarianceIdentity) {
    RngStream r(4, 0);
    for (int trial = 0; trial < 20; ++trial) {
        const FiniteChain c = random_reversible(r, 2 + trial % 9);
        Eigen::VectorXd f(c.size());
        for (auto& v : f) v = r.normal();
        const double v = asymptotic_variance_exact(c, f), var = stationary_variance(c, f);
        for (double lam : {0.1, 0.5, 0.9}) {
            const double expect = v / (1 - lam) + lam * var / (1 - lam);
            ASSERT_NEAR(asymptotic_variance_exact(lazy(c, lam), f), expect, 1e-9 * std::max(1.0, expect));
        }
    }
}

TEST(FiniteChain, Errors) {
    EXPECT_THROW(stationary_distribution(Eigen::MatrixXd::Identity(3, 3)), ReducibilityError);
    FiniteChain cycle;
    cycle.transition.resize(3, 3);
    cycle.transition << 0.1, 0.8, 0.1, 0.1, 0.1, 0.8, 0.8, 0.1, 0.1;
    cycle.states = {{0, 1}, {1, 1}, {2, 1}};
    cycle.stationary = stationary_distribution(cycle.transition);
    EXPECT_THROW(reversible_spectrum(cycle), NotReversibleError);
    EXPECT_THROW(lazy(two_state_chain(0.5, 0.5), 1.0), ConfigError);
    EXPECT_THROW(two_state_chain(0.0, 0.5), ConfigError);
    EXPECT_FALSE(is_row_stochastic(Eigen::MatrixXd::Constant(2, 2, 0.6)));
}

TEST(FiniteChain, SimulationVisitsStationaryFrequencies) {
    const FiniteChain c = two_state_chain(0.2, 0.6);
    RngStream r(5, 0);
    const auto s = simulate_chain(c, 0, 200000, r);
    double ones = 0;
    for (auto v : s) ones += v;
    EXPECT_NEAR(ones / s.size(), c.stationary(1), 0.01);
}

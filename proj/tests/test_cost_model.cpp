#include <cmath>

#include <gtest/gtest.h>

#include "abcmc/cost_model.hpp"
#include "abcmc/errors.hpp"
#include "abcmc/finite_chain.hpp"
#include "abcmc/grid_chains.hpp"
#include "abcmc/rng.hpp"

using namespace abcmc;

TEST(CostModel, SingleSampleCostsCoincide) {
    const CostReport c = mcmc_costs(1, 1, 1, 0.01, 1);
    EXPECT_DOUBLE_EQ(c.serial, 100);
    EXPECT_DOUBLE_EQ(c.parallel_single_chain, 100);
    EXPECT_DOUBLE_EQ(c.parallel_multi_chain, 100);
}

TEST(CostModel, SerialScalesWithM) {
    EXPECT_DOUBLE_EQ(mcmc_costs(2, 5, 4, 1, 1).serial, 8);
    EXPECT_DOUBLE_EQ(mcmc_costs(2, 5, 4, 1, 1).parallel_single_chain, 2);
}

TEST(CostModel, ParallelMultiChain) {
    EXPECT_DOUBLE_EQ(mcmc_costs(1, 6, 3, 1, 1).parallel_multi_chain, 2);
}

TEST(CostModel, CostPerIteration) {
    EXPECT_EQ(cost_per_iteration(1, 1), 1);
    EXPECT_EQ(cost_per_iteration(1, 7.5), 1);
    EXPECT_EQ(cost_per_iteration(64, 1), 64);
    EXPECT_NEAR(0.004 * cost_per_iteration(64, 1), 0.256, 1e-15);
    EXPECT_DOUBLE_EQ(cost_per_iteration(64, 16), 4.9375);
    EXPECT_NEAR(0.004 * cost_per_iteration(64, 16), 0.01975, 1e-15);
    EXPECT_THROW(cost_per_iteration(4, 0.5), ConfigError);
    EXPECT_THROW(cost_per_iteration(0, 1), ConfigError);
}

TEST(CostModel, CostPerIterationMonotone) {
    RngStream r(1, 0);
    for (int i = 0; i < 1000; ++i) {
        const std::size_t m = 1 + r.next_u64() % 100;
        const double d = 1 + 20 * r.uniform(), e = d + 5 * r.uniform();
        ASSERT_GE(cost_per_iteration(m, d), cost_per_iteration(m, e));
        ASSERT_LE(cost_per_iteration(m, d), cost_per_iteration(m + 1, d));
    }
}

TEST(CostModel, DiscountOnlyAffectsSerial) {
    const CostReport a = mcmc_costs(2, 3, 8, 0.5, 1), b = mcmc_costs(2, 3, 8, 0.5, 4);
    EXPECT_DOUBLE_EQ(b.serial, cost_per_iteration(8, 4) * 2 / 0.5);
    EXPECT_LT(b.serial, a.serial);
    EXPECT_EQ(a.parallel_single_chain, b.parallel_single_chain);
    EXPECT_EQ(a.parallel_multi_chain, b.parallel_multi_chain);
    EXPECT_DOUBLE_EQ(a.serial, 8 * a.parallel_single_chain);
}

TEST(CostModel, RejectionExamples) {
    EXPECT_DOUBLE_EQ(rejection_costs(1, 1, 1, 1).serial, 1);
    EXPECT_DOUBLE_EQ(rejection_costs(0.05, 1, 2, 0.01).serial, 4000);
}

TEST(CostModel, RejectionScalesExactlyWithM) {
    RngStream r(2, 0);
    for (int i = 0; i < 500; ++i) {
        const double p = 0.001 + r.uniform(), v = 10 * r.uniform(), d = 0.01 + r.uniform();
        const std::size_t m = 1 + r.next_u64() % 64;
        const CostReport one = rejection_costs(std::min(p, 1.0), v, 1, d);
        const CostReport many = rejection_costs(std::min(p, 1.0), v, m, d);
        ASSERT_EQ(many.serial, m * one.serial);
        ASSERT_GE(many.serial, 0);
        ASSERT_GE(many.parallel_multi_chain, 0);
    }
}

TEST(CostModel, InvalidInputs) {
    EXPECT_THROW(mcmc_costs(1, 1, 1, 0, 1), ConfigError);
    EXPECT_THROW(mcmc_costs(-1, 1, 1, 1, 1), ConfigError);
    EXPECT_THROW(rejection_costs(0, 1, 1, 1), ConfigError);
    EXPECT_THROW(rejection_costs(1.5, 1, 1, 1), ConfigError);
}

TEST(CostModel, LazyChainsCostAtMostTwiceSingleSample) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const GridModel g = random_grid_model(seed, 5 + seed);
        const FiniteChain q1 = build_pm_chain(g, 1, 0.5);
        const auto f1 = q1.lift(g.theta_grid);
        const double v1 = asymptotic_variance_exact(q1, f1);
        for (std::size_t m : {2u, 4u, 8u}) {
            const FiniteChain qm = build_pm_chain(g, m, 0.5);
            ASSERT_TRUE(is_nonnegative_definite(qm));
            const double vm = asymptotic_variance_exact(qm, qm.lift(g.theta_grid));
            const CostReport at_1 = mcmc_costs(v1, v1, 1, 0.01);
            const CostReport at_m = mcmc_costs(vm, v1, m, 0.01);
            EXPECT_LE(at_1.serial, 2 * at_m.serial + 1e-9) << "seed " << seed << " M " << m;
            EXPECT_LE(at_m.parallel_multi_chain, 2 * at_m.parallel_single_chain + 1e-9);
        }
    }
}

#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "abcmc/convex_order.hpp"
#include "abcmc/grid_chains.hpp"
#include "abcmc/rng.hpp"

namespace abcmc {

enum class VerifyStatus { pass, fail, skipped };

std::string_view to_string(VerifyStatus s);

/// One checked assertion. `margin` is the slack by which the assertion
/// holds (negative beyond tolerance means failure).
struct VerifyRow {
    std::string suite;
    std::string instance;
    std::string check;
    std::size_t m = 0;
    double alpha = 0.0;
    double laziness = 0.0;
    std::string function;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;
    VerifyStatus status = VerifyStatus::pass;
    std::string note;
};

struct VerifyOptions {
    std::vector<std::size_t> m_values{1, 2, 4, 8, 16};
    std::size_t n_random_instances = 20;
    std::uint64_t seed = 20160101;
    double tolerance = 1e-9;
    std::size_t convex_pairs = 200;
    std::size_t oracle_functions = 1000;
};

inline const std::vector<std::string>& verify_suite_names() {
    static const std::vector<std::string> names{"ordering", "handicap", "lazy_bound", "altmcmc", "convex"};
    return names;
}

/// The Gaussian-bench grid followed by randomised instances of sizes 5 to 25.
std::vector<GridModel> verify_instances(const VerifyOptions& options);

/// Two-point grid whose proposal always jumps; its chains have eigenvalue -1.
GridModel alternating_instance();

/// Test functions on a grid: theta, theta^2 and 1{theta > median grid value}.
struct GridFunction {
    std::string name;
    std::vector<double> values;
};
std::vector<GridFunction> grid_functions(const GridModel& g);

/// Runs one suite ("ordering", "handicap", "lazy_bound", "altmcmc", "convex") or
/// "all". Throws ConfigError for an unknown name.
std::vector<VerifyRow> run_verify_suite(std::string_view suite, const VerifyOptions& options = {});

std::size_t count_failures(const std::vector<VerifyRow>& rows);

/// min over c of E|Y - c| - E|X - c| on the union of supports.
double convex_order_margin(const DiscreteDistribution& x, const DiscreteDistribution& y);

/// Brute-force convex-order test: E phi(X) <= E phi(Y) + 1e-12 for phi(x) = x,
/// phi(x) = -x and `n_functions` random piecewise-linear convex phi (sums of
/// hinges at support points plus a random linear part).
bool convex_order_oracle(const DiscreteDistribution& x, const DiscreteDistribution& y,
                         RngStream& rng, std::size_t n_functions = 1000);

/// A random pair for checker-vs-oracle agreement tests. Kinds cycle through:
/// mean-preserving spread, reversed spread, mean-matched unrelated laws,
/// and unrelated laws with different means.
std::pair<DiscreteDistribution, DiscreteDistribution> random_distribution_pair(RngStream& rng,
                                                                               std::size_t kind);

}  // namespace abcmc

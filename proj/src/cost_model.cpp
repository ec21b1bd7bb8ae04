#include "abcmc/cost_model.hpp"

#include <cmath>

#include "abcmc/errors.hpp"

namespace abcmc {

namespace {

void check_common(std::size_t m, double target_variance) {
    if (m == 0) throw ConfigError("M must be at least 1");
    if (!(target_variance > 0.0)) throw ConfigError("target variance must be positive");
}

}  // namespace

double cost_per_iteration(std::size_t m, double discount) {
    if (m == 0) throw ConfigError("M must be at least 1");
    if (!(discount >= 1.0)) throw ConfigError("discount factor must be at least 1");
    return 1.0 + static_cast<double>(m - 1) / discount;
}

CostReport mcmc_costs(double v_m, double v_1, std::size_t m, double target_variance,
                      double discount) {
    check_common(m, target_variance);
    if (!(v_m >= 0.0) || !(v_1 >= 0.0)) throw ConfigError("asymptotic variances must be >= 0");
    CostReport r;
    r.m = m;
    r.target_variance = target_variance;
    r.discount = discount;
    r.parallel_single_chain = v_m / target_variance;
    r.serial = cost_per_iteration(m, discount) * r.parallel_single_chain;
    r.parallel_multi_chain = v_1 / (target_variance * static_cast<double>(m));
    return r;
}

CostReport rejection_costs(double p_acc, double v_f, std::size_t m, double target_variance) {
    check_common(m, target_variance);
    if (!(p_acc > 0.0 && p_acc <= 1.0))
        throw ConfigError("acceptance probability must lie in (0, 1]");
    if (!(v_f >= 0.0)) throw ConfigError("variance must be >= 0");
    const double per_draw = v_f / (target_variance * p_acc);
    CostReport r;
    r.m = m;
    r.target_variance = target_variance;
    r.serial = static_cast<double>(m) * per_draw;
    r.parallel_single_chain = per_draw;
    r.parallel_multi_chain = per_draw / static_cast<double>(m);
    return r;
}

}  // namespace abcmc

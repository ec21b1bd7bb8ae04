#include "abcmc/samplers.hpp"

#include <algorithm>
#include <string>

#include "abcmc/errors.hpp"
#include "abcmc/normal.hpp"

namespace abcmc {

void ProposalSpec::validate() const {
    if (!sample || !density) throw ConfigError("proposal is missing sample or density");
    if (!(holding_probability >= 0.0 && holding_probability < 1.0))
        throw ConfigError("holding probability must lie in [0, 1)");
}

ProposalSpec gaussian_independence_proposal(std::size_t dim, double mean, double sd) {
    if (!(sd > 0.0)) throw ConfigError("independence proposal sd must be positive");
    ProposalSpec p;
    p.kind = ProposalKind::independence;
    p.sample = [dim, mean, sd](std::span<const double>, RngStream& rng, std::span<double> to) {
        for (std::size_t k = 0; k < dim; ++k) to[k] = mean + sd * rng.normal();
    };
    p.density = [dim, mean, sd](std::span<const double>, std::span<const double> to) {
        double d = 1.0;
        for (std::size_t k = 0; k < dim; ++k) d *= normal_pdf(to[k], mean, sd);
        return d;
    };
    return p;
}

ProposalSpec gaussian_random_walk_proposal(std::size_t dim, double sigma) {
    if (!(sigma > 0.0)) throw ConfigError("random-walk step size must be positive");
    ProposalSpec p;
    p.kind = ProposalKind::random_walk;
    p.sample = [dim, sigma](std::span<const double> from, RngStream& rng, std::span<double> to) {
        for (std::size_t k = 0; k < dim; ++k) to[k] = from[k] + sigma * rng.normal();
    };
    p.density = [dim, sigma](std::span<const double> from, std::span<const double> to) {
        double d = 1.0;
        for (std::size_t k = 0; k < dim; ++k) d *= normal_pdf(to[k], from[k], sigma);
        return d;
    };
    return p;
}

std::vector<double> Trace::coordinate(std::size_t k) const {
    std::vector<double> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = draws[i * dim + k];
    return out;
}

namespace {

TraceMeta make_meta(std::string algorithm, std::size_t m, const KernelSpec& kernel,
                    const RngStream& rng) {
    return TraceMeta{std::move(algorithm), m, kernel, rng.seed(), rng.stream_id()};
}

void check_init(const ModelSpec& model, std::span<const double> init) {
    if (init.size() != model.param_dim)
        throw ConfigError("initial parameter has length " + std::to_string(init.size()) +
                          ", expected " + std::to_string(model.param_dim));
    if (!(model.prior_density(init) > 0.0))
        throw ConfigError("initial parameter has zero prior density");
}

}  // namespace

Trace abc_rejection(const ModelSpec& model, const KernelSpec& kernel, std::size_t m,
                    std::size_t n_accept, RngStream& rng, const SamplerLimits& limits) {
    model.validate();
    kernel.validate();
    if (m == 0) throw ConfigError("number of pseudo-samples M must be at least 1");
    if (n_accept == 0) throw ConfigError("number of accepted draws must be at least 1");

    Trace trace;
    trace.dim = model.param_dim;
    trace.meta = make_meta("rejection", m, kernel, rng);
    trace.draws.reserve(n_accept * trace.dim);

    SimulationScratch scratch(model);
    Parameter theta(model.param_dim);
    const double scale = 1.0 / (kernel.sup_bound * static_cast<double>(m));
    std::uint64_t zero_streak = 0;
    std::size_t n_accepted = 0;

    while (n_accepted < n_accept) {
        model.prior_sample(rng, theta);
        const double sum = kernel_sum(model, kernel, theta, m, rng, scratch);
        trace.pseudo_sample_count += m;
        const double u = rng.uniform();
        const bool accept = u < sum * scale;
        trace.accepted.push_back(accept ? 1 : 0);
        if (accept) {
            trace.draws.insert(trace.draws.end(), theta.begin(), theta.end());
            ++n_accepted;
        }
        if (sum == 0.0) {
            if (++zero_streak > limits.max_zero_streak)
                throw SamplerError("rejection sampler: kernel returned zero for " +
                                   std::to_string(zero_streak) +
                                   " consecutive proposals; bandwidth is too narrow");
        } else {
            zero_streak = 0;
        }
    }
    return trace;
}

Trace pm_mcmc(const ModelSpec& model, const KernelSpec& kernel, const ProposalSpec& proposal,
              std::size_t m, std::size_t n, std::span<const double> init, RngStream& rng,
              const SamplerLimits& limits) {
    model.validate();
    kernel.validate();
    proposal.validate();
    if (m == 0) throw ConfigError("number of pseudo-samples M must be at least 1");
    if (n == 0) throw ConfigError("number of iterations must be at least 1");
    check_init(model, init);

    Trace trace;
    trace.dim = model.param_dim;
    trace.meta = make_meta("pm_mcmc", m, kernel, rng);
    trace.draws.reserve(n * trace.dim);
    trace.accepted.reserve(n);
    trace.held.reserve(n);
    trace.weights.reserve(n);

    SimulationScratch scratch(model);
    ChainState state{Parameter(init.begin(), init.end()), 0.0};

    std::uint64_t attempts = 0;
    while (!(state.weight > 0.0)) {
        if (attempts++ >= limits.max_init_attempts)
            throw SamplerError("pm_mcmc: initial weight stayed zero after " +
                               std::to_string(limits.max_init_attempts) + " attempts");
        state.weight = abc_weight(model, kernel, state.theta, m, rng, scratch).value;
        trace.pseudo_sample_count += m;
    }
    trace.init_pseudo_sample_count = trace.pseudo_sample_count;

    Parameter candidate(model.param_dim);
    const double hold = proposal.holding_probability;
    for (std::size_t t = 0; t < n; ++t) {
        if (hold > 0.0 && rng.uniform() < hold) {
            trace.held.push_back(1);
            trace.accepted.push_back(0);
        } else {
            proposal.sample(state.theta, rng, candidate);
            const double w = abc_weight(model, kernel, candidate, m, rng, scratch).value;
            trace.pseudo_sample_count += m;
            const double u = rng.uniform();
            bool accept = false;
            if (w > 0.0) {
                const double ratio = (w * proposal.density(candidate, state.theta)) /
                                     (state.weight * proposal.density(state.theta, candidate));
                accept = u <= ratio;
            }
            if (accept) {
                state.theta.swap(candidate);
                state.weight = w;
            }
            trace.held.push_back(0);
            trace.accepted.push_back(accept ? 1 : 0);
        }
        trace.draws.insert(trace.draws.end(), state.theta.begin(), state.theta.end());
        trace.weights.push_back(state.weight);
    }
    return trace;
}

Trace alt_mcmc(const ModelSpec& model, const KernelSpec& kernel, const ProposalSpec& proposal,
               std::size_t n, std::span<const double> init, RngStream& rng) {
    model.validate();
    kernel.validate();
    proposal.validate();
    if (n == 0) throw ConfigError("number of iterations must be at least 1");
    check_init(model, init);

    Trace trace;
    trace.dim = model.param_dim;
    trace.meta = make_meta("alt_mcmc", 1, kernel, rng);
    trace.draws.reserve(n * trace.dim);
    trace.accepted.reserve(n);
    trace.held.reserve(n);

    SimulationScratch scratch(model);
    Parameter theta(init.begin(), init.end());
    double prior = model.prior_density(theta);
    Parameter candidate(model.param_dim);
    const double hold = proposal.holding_probability;

    for (std::size_t t = 0; t < n; ++t) {
        if (hold > 0.0 && rng.uniform() < hold) {
            trace.held.push_back(1);
            trace.accepted.push_back(0);
        } else {
            proposal.sample(theta, rng, candidate);
            const double k = simulate_kernel(model, kernel, candidate, rng, scratch);
            trace.pseudo_sample_count += 1;
            const double u = rng.uniform();
            const double cand_prior = model.prior_density(candidate);
            const double mh = (cand_prior * proposal.density(candidate, theta)) /
                              (prior * proposal.density(theta, candidate));
            const double r = (k / kernel.sup_bound) * std::min(1.0, mh);
            const bool accept = r > 0.0 && u <= r;
            if (accept) {
                theta.swap(candidate);
                prior = cand_prior;
            }
            trace.held.push_back(0);
            trace.accepted.push_back(accept ? 1 : 0);
        }
        trace.draws.insert(trace.draws.end(), theta.begin(), theta.end());
    }
    return trace;
}

Trace discard_burn_in(const Trace& trace, std::size_t burn_in) {
    if (burn_in == 0) return trace;
    const std::size_t n = trace.size();
    const std::size_t drop = std::min(burn_in, n);
    Trace out;
    out.dim = trace.dim;
    out.meta = trace.meta;
    out.pseudo_sample_count = trace.pseudo_sample_count;
    out.init_pseudo_sample_count = trace.init_pseudo_sample_count;
    out.draws.assign(trace.draws.begin() + static_cast<std::ptrdiff_t>(drop * trace.dim),
                     trace.draws.end());
    auto tail = [drop](const auto& v) {
        using V = std::decay_t<decltype(v)>;
        return v.size() > drop ? V(v.begin() + static_cast<std::ptrdiff_t>(drop), v.end()) : V{};
    };
    out.accepted = tail(trace.accepted);
    out.held = tail(trace.held);
    out.weights = tail(trace.weights);
    return out;
}

}  // namespace abcmc

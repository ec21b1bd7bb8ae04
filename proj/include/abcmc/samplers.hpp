#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "abcmc/model.hpp"
#include "abcmc/rng.hpp"

namespace abcmc {

enum class ProposalKind { independence, random_walk };

/// Proposal kernel q with an optional holding probability.
///
/// With probability `holding_probability` the chain proposes to stay put and
/// the move is taken without simulation. Otherwise `sample` draws a
/// candidate and `density(from, to)` is the non-holding q(to | from) used in
/// acceptance ratios.
struct ProposalSpec {
    ProposalKind kind = ProposalKind::independence;
    std::function<void(std::span<const double> from, RngStream&, std::span<double> to)> sample;
    std::function<double(std::span<const double> from, std::span<const double> to)> density;
    double holding_probability = 0.0;

    void validate() const;
};

/// Independence proposal N(mean, sd^2) in every coordinate.
ProposalSpec gaussian_independence_proposal(std::size_t dim, double mean, double sd);

/// Random-walk proposal with N(0, sigma^2) increments in every coordinate.
ProposalSpec gaussian_random_walk_proposal(std::size_t dim, double sigma);

struct TraceMeta {
    std::string algorithm;
    std::size_t m = 1;
    KernelSpec kernel;
    std::uint64_t seed = 0;
    std::uint64_t stream_id = 0;
};

/// Sampler output. Draws are stored row-major, `dim` values per draw.
struct Trace {
    std::size_t dim = 1;
    std::vector<double> draws;
    /// Per MCMC iteration, or per proposal for rejection sampling.
    std::vector<std::uint8_t> accepted;
    /// Per MCMC iteration: 1 when the holding move was taken.
    std::vector<std::uint8_t> held;
    /// Retained weight T after each MCMC iteration.
    std::vector<double> weights;
    /// All pseudo-samples generated, including those spent on initialisation.
    std::uint64_t pseudo_sample_count = 0;
    /// Pseudo-samples spent before the first iteration.
    std::uint64_t init_pseudo_sample_count = 0;
    TraceMeta meta;

    std::size_t size() const noexcept { return dim == 0 ? 0 : draws.size() / dim; }
    std::span<const double> draw(std::size_t i) const {
        return std::span<const double>(draws).subspan(i * dim, dim);
    }
    /// Coordinate `k` of every draw.
    std::vector<double> coordinate(std::size_t k) const;
};

struct ChainState {
    Parameter theta;
    double weight = 0.0;
};

struct SamplerLimits {
    /// Consecutive proposals with zero acceptance probability before the
    /// rejection sampler gives up.
    std::uint64_t max_zero_streak = 100'000'000;
    /// Weight redraws allowed while initialising a pseudo-marginal chain.
    std::uint64_t max_init_attempts = 100'000'000;
};

/// Generalised ABC rejection: each proposal draws theta' from the prior, M
/// pseudo-samples and u, and is accepted when u < sum K / (c M).
Trace abc_rejection(const ModelSpec& model, const KernelSpec& kernel, std::size_t m,
                    std::size_t n_accept, RngStream& rng, const SamplerLimits& limits = {});

/// Pseudo-marginal ABC-MCMC with the M-sample kernel weight.
Trace pm_mcmc(const ModelSpec& model, const KernelSpec& kernel, const ProposalSpec& proposal,
              std::size_t m, std::size_t n, std::span<const double> init, RngStream& rng,
              const SamplerLimits& limits = {});

/// ABC-MCMC with one pseudo-sample per iteration and acceptance
/// (K / c) * min{1, pi(theta') q(theta | theta') / (pi(theta) q(theta' | theta))}.
Trace alt_mcmc(const ModelSpec& model, const KernelSpec& kernel, const ProposalSpec& proposal,
               std::size_t n, std::span<const double> init, RngStream& rng);

/// Drops the first `burn_in` iterations of an MCMC trace.
Trace discard_burn_in(const Trace& trace, std::size_t burn_in);

}  // namespace abcmc

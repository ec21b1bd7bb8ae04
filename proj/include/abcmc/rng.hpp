#pragma once

#include <cstdint>
#include <random>

namespace abcmc {

/// Reproducible random stream addressed by (seed, stream_id).
///
/// Two streams built from the same pair produce bitwise-identical draws.
/// Distinct stream ids seed the engine through independent seed_seq inputs,
/// so chain i or sweep cell k can be given its own stream without sharing
/// state. A stream is single-owner; never share one across threads.
class RngStream {
public:
    RngStream(std::uint64_t seed, std::uint64_t stream_id);

    std::uint64_t seed() const noexcept { return seed_; }
    std::uint64_t stream_id() const noexcept { return stream_id_; }

    /// Uniform on [0, 1) with 53 random bits.
    double uniform() noexcept {
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    double normal() { return normal_(engine_); }

    std::uint64_t next_u64() noexcept { return engine_(); }

    /// Child stream whose id is derived from this stream's id and `child`.
    /// The parent is left untouched.
    RngStream substream(std::uint64_t child) const;

private:
    std::uint64_t seed_;
    std::uint64_t stream_id_;
    std::mt19937_64 engine_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

/// Mixes a list of integer keys into one stream id.
std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts);

}  // namespace abcmc

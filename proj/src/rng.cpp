#include "abcmc/rng.hpp"

#include <array>

namespace abcmc {

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::mt19937_64 make_engine(std::uint64_t seed, std::uint64_t stream_id) {
    const std::array<std::uint32_t, 5> words{
        static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
        static_cast<std::uint32_t>(stream_id), static_cast<std::uint32_t>(stream_id >> 32),
        0x61626373u};
    std::seed_seq seq(words.begin(), words.end());
    return std::mt19937_64(seq);
}

}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream_id)
    : seed_(seed), stream_id_(stream_id), engine_(make_engine(seed, stream_id)) {}

RngStream RngStream::substream(std::uint64_t child) const {
    return RngStream(seed_, stream_key({stream_id_, child}));
}

std::uint64_t stream_key(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t h = 0x243f6a8885a308d3ULL;
    for (auto p : parts) h = splitmix64(h ^ splitmix64(p));
    return h;
}

}  // namespace abcmc

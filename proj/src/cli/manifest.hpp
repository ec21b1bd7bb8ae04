#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "cli/config.hpp"

namespace abcmc::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
    std::string command;
    std::string config_digest;
    std::uint64_t seed = 0;
    std::string tool_version = kToolVersion;
    std::string started;
    std::string finished;
};

Json to_json(const RunManifest& m);

/// Current UTC time as ISO-8601 with second resolution.
std::string utc_timestamp();

void write_manifest(const std::filesystem::path& dir, const RunManifest& m);

}  // namespace abcmc::cli

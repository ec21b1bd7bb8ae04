#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <ostream>
#include <string>

#include "cli/config.hpp"

namespace abcmc::cli {

enum ExitCode : int { kOk = 0, kInternalError = 1, kConfigError = 2, kSamplerError = 3, kVerifyFailed = 4 };

struct CommonOptions {
    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> iters;
    bool full = false;
    std::optional<std::string> out;
    std::size_t jobs = 1;
    bool print_config = false;
    bool svg = true;
};

/// Output directory: $ABCMC_OUT if set and non-empty, else --out, else "abcmc-out".
std::filesystem::path resolve_out_dir(const std::optional<std::string>& out);

/// Loads the config and applies --seed / --iters / --full for `command`.
Json resolve_config(const CommonOptions& options, const std::string& command);

int cmd_rejection(const CommonOptions& options, std::ostream& log);
int cmd_mcmc(const CommonOptions& options, std::ostream& log);
int cmd_verify(const CommonOptions& options, const std::string& suite, std::ostream& log);
int cmd_bench(const CommonOptions& options, const std::string& figure, std::ostream& log);

/// Runs `body`, mapping library exceptions to exit codes and reporting them on `err`.
int guarded(const std::function<int()>& body, std::ostream& err);

}  // namespace abcmc::cli

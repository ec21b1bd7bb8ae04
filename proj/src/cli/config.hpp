#pragma once

#include <optional>
#include <string>

#include <json.hpp>

namespace abcmc::cli {

using Json = nlohmann::json;

/// Every recognised key with its default value. User documents are overlaid
/// on this; keys absent here are rejected.
Json default_config();

/// Reads `path` (if given) and overlays it on the defaults. Throws
/// ConfigError on parse errors, unknown keys or type mismatches.
Json load_config(const std::optional<std::string>& path);

/// Recursively overlays `user` on `base`, rejecting keys unknown to `base`.
Json overlay(const Json& base, const Json& user, const std::string& where = "");

[[noreturn]] void throw_config_error(const std::string& pointer, const std::string& what);

/// Typed lookup by JSON pointer, converting nlohmann errors to ConfigError.
template <class T>
T get(const Json& config, const std::string& pointer) {
    try {
        return config.at(Json::json_pointer(pointer)).get<T>();
    } catch (const nlohmann::json::exception& e) {
        throw_config_error(pointer, e.what());
    }
}

/// Hex SHA-256 of the canonical (key-sorted, compact) serialisation.
std::string config_digest(const Json& config);

}  // namespace abcmc::cli

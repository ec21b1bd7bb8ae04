#include "cli/config.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

#include "abcmc/errors.hpp"

namespace abcmc::cli {

Json default_config() {
    return Json::parse(R"({
        "seed": 1,
        "stream": 0,
        "M": 1,
        "model": {"kind": "gaussian", "y_obs": 2.0, "sigma_y": 1.0},
        "kernel": {"kind": "uniform", "bandwidth": 0.25, "sup_bound": 1.0},
        "rejection": {"n_accept": 10000},
        "mcmc": {
            "n": 200000,
            "init": null,
            "burn_in": 0,
            "proposal": {"kind": "independence", "mean": 0.0, "sd": 1.0, "sigma": 1.0,
                         "holding_probability": 0.0},
            "functions": ["theta", "theta_sq", "constant"],
            "delta_var": 0.01,
            "discount": 1.0,
            "companion_m1": true
        },
        "bench": {
            "y_obs": 2.0,
            "sigma_y": 1.0,
            "kernel": "uniform",
            "n_iters": 200000,
            "discount": 1.0,
            "target_rate": 0.004,
            "epsilon_grid": [0.25, 0.125, 0.0625, 0.03125, 0.015625],
            "m_grid": [1, 2, 4, 8, 16, 32, 64],
            "discount_grid": [1, 2, 4, 8, 16],
            "y_obs_values": [2, 4, 6, 8],
            "sigma_y_values": [0.01, 0.05, 0.1, 0.5, 1, 2]
        },
        "verify": {
            "n_random_instances": 20,
            "seed": 20160101,
            "tolerance": 1e-9,
            "convex_pairs": 200,
            "oracle_functions": 1000,
            "m_values": [1, 2, 4, 8, 16]
        }
    })");
}

void throw_config_error(const std::string& pointer, const std::string& what) {
    throw ConfigError("config key " + pointer + ": " + what);
}

Json overlay(const Json& base, const Json& user, const std::string& where) {
    if (!base.is_object() || !user.is_object()) return user;
    Json out = base;
    for (const auto& [key, value] : user.items()) {
        const std::string path = where + "/" + key;
        if (!base.contains(key)) throw ConfigError("unknown config key " + path);
        const Json& def = base.at(key);
        if (def.is_object()) {
            if (!value.is_object()) throw ConfigError("config key " + path + " must be an object");
            out[key] = overlay(def, value, path);
        } else {
            out[key] = value;
        }
    }
    return out;
}

Json load_config(const std::optional<std::string>& path) {
    Json config = default_config();
    if (!path) return config;
    std::ifstream in(*path);
    if (!in) throw ConfigError("cannot open config file " + *path);
    Json user;
    try {
        user = Json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("malformed config " + *path + ": " + e.what());
    }
    if (!user.is_object()) throw ConfigError("config document must be an object");
    return overlay(config, user);
}

std::string config_digest(const Json& config) {
    const std::string canonical = config.dump();
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(canonical.data(), canonical.size(), md, &len, EVP_sha256(), nullptr);
    std::ostringstream hex;
    for (unsigned int i = 0; i < len; ++i)
        hex << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(md[i]);
    return hex.str();
}

}  // namespace abcmc::cli

#include "cli/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <stdexcept>

namespace abcmc::cli {

Json to_json(const RunManifest& m) {
    return Json{{"command", m.command},         {"config_digest", m.config_digest},
                {"seed", m.seed},               {"tool_version", m.tool_version},
                {"started", m.started},         {"finished", m.finished}};
}

std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

void write_manifest(const std::filesystem::path& dir, const RunManifest& m) {
    std::ofstream out(dir / "manifest.json");
    if (!out) throw std::runtime_error("cannot write manifest in " + dir.string());
    out << to_json(m).dump(2) << '\n';
}

}  // namespace abcmc::cli

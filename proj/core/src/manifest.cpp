#include "ztoa/manifest.hpp"

#include <json.hpp>

#include <fstream>
#include <stdexcept>

namespace ztoa {

std::uint64_t fnv1a64(std::string_view data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

void RunManifest::add_output(const std::string& path, std::string_view content) {
    outputs.push_back({path, content.size(), fnv1a64(content)});
}

std::string RunManifest::to_json() const {
    nlohmann::json j;
    j["schema"] = 1;
    j["tool"] = kToolVersion;
    j["command"] = command;
    j["scenario"] = scenario_name;
    j["scenario_fnv64"] = scenario_fnv64;
    nlohmann::json params = nlohmann::json::object();
    for (const auto& [k, v] : resolved) params[k] = v;
    j["resolved_internal"] = params;
    j["outputs"] = nlohmann::json::array();
    for (const auto& f : outputs)
        j["outputs"].push_back({{"file", f.path}, {"bytes", f.bytes}, {"fnv64", f.fnv64}});
    j["wall_seconds"] = wall_seconds;
    j["created_unix"] = created_unix;
    return j.dump(2) + "\n";
}

void RunManifest::write_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open manifest file: " + path);
    const std::string s = to_json();
    out.write(s.data(), static_cast<std::streamsize>(s.size()));
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace ztoa

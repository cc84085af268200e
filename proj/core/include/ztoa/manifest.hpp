#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace ztoa {

inline constexpr const char* kToolVersion = "ztoa 0.1.0";

std::uint64_t fnv1a64(std::string_view data);

/// Run provenance: scenario hash, resolved internal parameters, and the
/// produced files with content checksums.  Timestamps are excluded from
/// determinism guarantees.
struct RunManifest {
    std::string command;
    std::string scenario_name;
    std::uint64_t scenario_fnv64 = 0;
    std::vector<std::pair<std::string, double>> resolved;  // internal-unit parameters
    struct OutputFile {
        std::string path;
        std::uint64_t bytes = 0;
        std::uint64_t fnv64 = 0;
    };
    std::vector<OutputFile> outputs;
    double wall_seconds = 0.0;
    std::int64_t created_unix = 0;

    void add_output(const std::string& path, std::string_view content);
    std::string to_json() const;
    void write_file(const std::string& path) const;
};

} // namespace ztoa

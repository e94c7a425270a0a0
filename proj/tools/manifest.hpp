#pragma once

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace tonnetz::cli {

struct InputRecord {
    std::string path;
    std::string sha256;
};

/// Provenance block embedded in every JSON the tool writes. Two runs with
/// equal manifests produce byte-identical files.
struct RunManifest {
    std::string command;
    std::vector<InputRecord> inputs;
    std::optional<bool> normalized;
    std::vector<int> degrees;
    std::optional<std::string> linkage;
    std::vector<std::uint64_t> seeds;
    nlohmann::json parameters = nlohmann::json::object(); ///< command-specific settings

    nlohmann::json to_json() const;
};

std::string sha256_hex(const std::string& bytes);

/// Reads a whole file; throws std::ios_base::failure.
std::string read_file(const std::string& path);

InputRecord record_input(const std::string& path, const std::string& contents);

} // namespace tonnetz::cli

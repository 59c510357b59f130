#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "kdvbbm/config.hpp"

namespace kdvbbm {

inline constexpr const char* kToolVersion = "0.1.0";

enum class CheckStatus { pass, fail, info };
std::string to_string(CheckStatus s);

struct CheckResult {
    std::string name;
    CheckStatus status = CheckStatus::info;
    double value = 0;      // measured quantity
    double threshold = 0;  // what it was compared against
    std::string detail;
};

struct ArtifactEntry {
    std::string path;  // relative to the run directory
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct RunManifest {
    std::string command;
    RawConfig config;
    std::string version = kToolVersion;
    std::string started;
    std::string finished;
    std::vector<ArtifactEntry> artifacts;
    std::vector<CheckResult> checks;
    std::vector<std::pair<std::string, std::string>> notes;  // free-form key/value facts

    bool pass() const;  // no check has status fail
};

std::string sha256_hex(const std::string& bytes);
std::string sha256_file(const std::filesystem::path& p);

/// ISO 8601 UTC with millisecond resolution.
std::string utc_timestamp();

/// Digest every regular file under dir (sorted, manifest.json excluded).
std::vector<ArtifactEntry> collect_artifacts(const std::filesystem::path& dir);

std::string manifest_json(const RunManifest& m);
void write_manifest(const std::filesystem::path& path, const RunManifest& m);

}  // namespace kdvbbm

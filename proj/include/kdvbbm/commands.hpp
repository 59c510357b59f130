#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "kdvbbm/config.hpp"
#include "kdvbbm/manifest.hpp"

namespace kdvbbm {

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitConfig = 2, kExitRuntime = 3 };

/// Environment variable that, when set, replaces output.dir as the root of
/// all run directories.
inline constexpr const char* kOutputRootEnv = "KDVBBM_OUTPUT_ROOT";

std::filesystem::path output_root(const RunConfig& cfg);

struct CommandOutcome {
    int exit_code = kExitOk;
    std::filesystem::path run_dir;  // promoted directory; empty when the run failed
    RunManifest manifest;
    std::string error;
};

const std::vector<std::string>& known_commands();  // simulate, picard, radius, estimates

/// Builds the config and runs one command inside a staging directory that is
/// promoted to <root>/<name> only if the command completes. Never throws.
CommandOutcome run_command(const std::string& command, const RawConfig& raw, const std::string& source);

struct SweepAxis {
    std::string key;
    std::vector<std::string> values;
};

/// "section.key=v1,v2,..." -> axis.
SweepAxis parse_sweep_axis(const std::string& spec);

/// Cross product of axes applied to base; run i is named <name>-<i>, with
/// <name> the output.name that run ends up with.
std::vector<RawConfig> expand_sweep(const RawConfig& base, const std::vector<SweepAxis>& axes);

/// Runs every expanded config through run_command in parallel and writes a
/// summary (sweep.csv plus manifest) to <root>/<name>. The exit code is the
/// largest child exit code.
CommandOutcome run_sweep(const std::string& command, const RawConfig& base, const std::string& source,
                         const std::vector<SweepAxis>& axes, unsigned threads);

}  // namespace kdvbbm

#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "kdvbbm/analyticity.hpp"
#include "kdvbbm/estimates.hpp"
#include "kdvbbm/grid.hpp"
#include "kdvbbm/params.hpp"

namespace kdvbbm {

/// Flat "section.key" -> value map, the unit of config snapshots and overrides.
using RawConfig = std::map<std::string, std::string>;

/// Parses INI text; comments start with ';' or '#'. Throws ConfigError.
RawConfig parse_ini(const std::string& text);
RawConfig load_ini(const std::filesystem::path& path);
std::string to_ini(const RawConfig& raw);

/// Applies "section.key=value". The key must be known.
void apply_override(RawConfig& raw, const std::string& assignment);

struct DatumSpec {
    std::string family = "cos_mode";  // cos_mode | gaussian | gevrey_synthetic
    int k = 1;
    double amplitude = 0.05;
    double width = 1.0;
    double sigma0 = 0.5;
    double s = 2.0;
};

struct SolverSpec {
    std::string method = "ifrk4";
    std::optional<double> T = 5.0;  // nullopt = local existence time
    double dt = 1e-3;
    double tol = 1e-10;
    int max_iter = 100;
    int nodes = 64;
    int record_stride = 10;
    double blowup_factor = 1e6;
};

struct AnalyticitySpec {
    double sigma0 = 0.5;
    double noise_floor = 1e-13;
    LowerBoundVariant variant = LowerBoundVariant::exact_integral;
    double calibration_fraction = 0.1;
    double max_rel_change = 0.01;
};

struct EstimatesSpec {
    int trials = 1000;
    double s = 1.0;
    double sigma = 0.1;
    FieldProfile profile;
    std::vector<std::string> campaigns;
    double failure_s = -0.5;
    std::vector<int> failure_ks{8, 16, 32, 64};
    double splitting_r = 0.5;
};

struct RunConfig {
    CoefficientSet coeffs = CoefficientSet::defaults();
    int n_modes = 256;
    double half_length = 0;  // set from the grid section
    DatumSpec datum;
    SolverSpec solver;
    AnalyticitySpec analyticity;
    EstimatesSpec estimates;
    std::filesystem::path output_dir = "runs";
    std::string name = "run";
    std::uint64_t seed = 1;
    unsigned threads = 0;
    std::string source;  // where the config came from, for error context
    RawConfig raw;

    GridPtr grid() const;
};

/// Every campaign name accepted in estimates.campaigns.
const std::vector<std::string>& known_campaigns();

/// Builds and validates a RunConfig. Unknown sections or keys, malformed
/// values and violated preconditions all raise ConfigError.
RunConfig build_config(const RawConfig& raw, const std::string& source = "<memory>");

/// Initial datum described by the config.
Spectrum make_datum(const DatumSpec& d, const GridPtr& grid);

}  // namespace kdvbbm

#include <CLI11.hpp>
#include <iostream>

#include "kdvbbm/commands.hpp"
#include "kdvbbm/error.hpp"
#include "kdvbbm/simd/kernels.hpp"

namespace {

void print_outcome(const kdvbbm::CommandOutcome& out) {
    if (!out.error.empty()) std::cerr << "error: " << out.error << '\n';
    for (const auto& c : out.manifest.checks)
        std::cout << kdvbbm::to_string(c.status) << "  " << c.name << "  value=" << c.value
                  << (c.detail.empty() ? "" : "  (" + c.detail + ")") << '\n';
    if (!out.run_dir.empty()) std::cout << "output: " << out.run_dir.string() << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Pseudo-spectral simulator and estimate harness for the fifth-order KdV-BBM model"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(kdvbbm::kToolVersion));

    std::string config_path;
    std::vector<std::string> sets;
    std::string sweep_command = "simulate";
    unsigned threads = 0;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("-c,--config", config_path, "INI configuration file")->required()->check(CLI::ExistingFile);
    };
    std::vector<CLI::App*> runs;
    for (const auto& name : kdvbbm::known_commands()) {
        auto* sub = app.add_subcommand(name, "run the " + name + " command");
        add_common(sub);
        sub->add_option("--set", sets, "override section.key=value (repeatable)");
        runs.push_back(sub);
    }
    auto* sweep = app.add_subcommand("sweep", "run a command over the cross product of --set value lists");
    add_common(sweep);
    sweep->add_option("--set", sets, "section.key=v1,v2,... (repeatable)")->required();
    sweep->add_option("--command", sweep_command, "command run for every point")
        ->check(CLI::IsMember(kdvbbm::known_commands()));
    sweep->add_option("--threads", threads, "parallel runs (0 = all cores)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kdvbbm::kExitOk : kdvbbm::kExitConfig;
    }

    std::cerr << "kernels: " << kdvbbm::simd::active().name << '\n';
    kdvbbm::CommandOutcome out;
    try {
        kdvbbm::RawConfig raw = kdvbbm::load_ini(config_path);
        if (sweep->parsed()) {
            std::vector<kdvbbm::SweepAxis> axes;
            // Single-valued axes are plain overrides, so they also reach the sweep summary.
            for (const auto& s : sets) {
                auto axis = kdvbbm::parse_sweep_axis(s);
                if (axis.values.size() == 1) kdvbbm::apply_override(raw, axis.key + "=" + axis.values.front());
                else axes.push_back(std::move(axis));
            }
            out = kdvbbm::run_sweep(sweep_command, raw, config_path, axes, threads);
        } else {
            for (const auto& s : sets) kdvbbm::apply_override(raw, s);
            for (auto* sub : runs)
                if (sub->parsed()) out = kdvbbm::run_command(sub->get_name(), raw, config_path);
        }
    } catch (const kdvbbm::ConfigError& e) {
        std::cerr << "error: " << config_path << ": " << e.what() << '\n';
        return kdvbbm::kExitConfig;
    }
    print_outcome(out);
    return out.exit_code;
}

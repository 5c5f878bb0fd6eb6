#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "vbag/errors.hpp"
#include "vbag/scenario.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

// An unreadable or unparsable config file is a config error (exit 2), not a
// runtime failure.
vbag::ScenarioConfig load_config(const std::string& path) {
    try {
        return vbag::ScenarioConfig::load_file(path);
    } catch (const vbag::IoError& e) {
        throw vbag::ConfigError(e.what());
    }
}

int cmd_run(const std::string& config_path, bool has_seed, std::uint64_t seed,
            int workers, const std::string& out_dir) {
    vbag::ScenarioConfig cfg = load_config(config_path);
    if (has_seed) cfg.seed = seed;
    if (workers > 0) cfg.workers = workers;
    cfg.validate();
    auto files = vbag::run_scenario_to_files(cfg, out_dir);
    for (const auto& f : files) std::cout << "wrote " << f << "\n";
    return kExitOk;
}

int cmd_validate(const std::string& config_path) {
    vbag::ScenarioConfig cfg = load_config(config_path);
    cfg.validate();
    std::cout << "ok: " << vbag::scenario_name(cfg.scenario) << " (n=" << cfg.n
              << ", B=" << cfg.B << ")\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"vbag: bagged variational posterior experiments"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir = ".";
    std::uint64_t seed = 0;
    int workers = 0;

    auto* run = app.add_subcommand("run", "run a scenario from a config file");
    run->add_option("--config", config_path, "path to a JSON config")->required();
    auto* seed_opt = run->add_option("--seed", seed, "override the config seed");
    run->add_option("--workers", workers, "override the worker count");
    run->add_option("--out", out_dir, "output directory");

    auto* scenarios = app.add_subcommand("scenarios", "list scenario names");

    std::string validate_path;
    auto* validate =
        app.add_subcommand("validate", "check a config without running it");
    validate->add_option("--config", validate_path, "path to a JSON config")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (run->parsed())
            return cmd_run(config_path, seed_opt->count() > 0, seed, workers,
                           out_dir);
        if (scenarios->parsed()) {
            for (const auto& s : vbag::scenario_names()) std::cout << s << "\n";
            return kExitOk;
        }
        if (validate->parsed()) return cmd_validate(validate_path);
    } catch (const vbag::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const vbag::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}

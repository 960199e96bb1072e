#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ssmap/commands.hpp"
#include "ssmap/errors.hpp"

namespace {

struct CliFlags {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> workers;
    std::optional<double> threshold;
    std::optional<std::size_t> count;
    std::string field = "pf_p";
};

// Config file first, then flag overrides.
ssmap::RunConfig resolve(const CliFlags& flags) {
    ssmap::RunConfig config = flags.config_path.empty()
                                  ? ssmap::RunConfig{}
                                  : ssmap::load_config(flags.config_path);
    if (flags.seed) config.synth.seed = *flags.seed;
    if (flags.count) config.synth.count = *flags.count;
    if (flags.threshold) {
        if (!(*flags.threshold >= 0.0))
            throw ssmap::ConfigError("--threshold must be >= 0");
        config.threshold = *flags.threshold;
    }
    if (flags.workers) {
        if (*flags.workers == "auto") {
            config.workers = 0;
        } else {
            try {
                const int n = std::stoi(*flags.workers);
                if (n < 1) throw std::invalid_argument("non-positive");
                config.workers = n;
            } catch (const std::exception&) {
                throw ssmap::ConfigError(
                    "--workers expects a positive integer or 'auto'");
            }
        }
    }
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Climate-driven simulation and mapping of a solar collector wall"};
    app.require_subcommand(1);
    app.fallthrough(); // --config may follow the subcommand name

    CliFlags flags;
    app.add_option("--config", flags.config_path,
                   "JSON run configuration (defaults apply when omitted)");

    auto* synth = app.add_subcommand(
        "synth", "Generate a synthetic climate station set");
    synth->add_option("--count", flags.count, "Number of stations");
    synth->add_option("--seed", flags.seed, "Generator seed");

    app.add_subcommand("validate",
                       "Check climate files, filling small gaps");

    auto* simulate = app.add_subcommand(
        "simulate", "Simulate every station and write performance files");
    auto* sweep = app.add_subcommand(
        "sweep", "Run the depth/flow parameter grid per station");
    auto* map_cmd = app.add_subcommand(
        "map", "Interpolate an indicator field onto the geographic grid");
    map_cmd->add_option("--field", flags.field,
                        "Indicator column to rasterize (default pf_p)");

    for (auto* cmd : {synth, simulate, sweep, map_cmd}) {
        cmd->add_option("--workers", flags.workers,
                        "Worker threads (positive integer or 'auto')");
    }
    for (auto* cmd : {simulate, sweep}) {
        cmd->add_option("--threshold", flags.threshold,
                        "Operability threshold [W/m2]");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e); // --help and friends
        std::cerr << "error E_CONFIG: " << e.what() << '\n';
        return ssmap::kConfigError;
    }

    ssmap::CommandIO io{std::cout, std::cerr};
    ssmap::RunConfig config;
    try {
        config = resolve(flags);
    } catch (const ssmap::ConfigError& e) {
        std::cerr << "error E_CONFIG: " << e.what() << '\n';
        return ssmap::kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error E_CONFIG: " << e.what() << '\n';
        return ssmap::kConfigError;
    }

    if (synth->parsed()) return ssmap::cmd_synth(config, io);
    if (app.get_subcommand("validate")->parsed())
        return ssmap::cmd_validate(config, io);
    if (simulate->parsed()) return ssmap::cmd_simulate(config, io);
    if (sweep->parsed()) return ssmap::cmd_sweep(config, io);
    if (map_cmd->parsed()) return ssmap::cmd_map(config, flags.field, io);

    std::cerr << "error E_CONFIG: no command given\n";
    return ssmap::kConfigError;
}

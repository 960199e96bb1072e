#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>

#include "ssmap/collector.hpp"
#include "ssmap/mapping.hpp"
#include "ssmap/sweep.hpp"

namespace ssmap {

// Synthetic station-set generation settings.
struct SynthConfig {
    std::size_t count = 130;
    double lat_min = 36.0;
    double lat_max = 70.0;
    double lon_min = -10.0;
    double lon_max = 31.0;
    std::uint64_t seed = 42;
};

// Everything a run needs, loadable from one JSON file. Flags override
// individual fields after loading.
struct RunConfig {
    std::filesystem::path climate_dir = "climate";
    std::filesystem::path output_dir = "out";
    double threshold = 50.0; // W/m^2
    int workers = 0;         // 0 = auto (hardware concurrency)

    CollectorParams collector;
    SweepGrid sweep_grid = SweepGrid::default_grid();
    bool rederive_capacities = true;

    GridSpec map_grid;
    double idw_power = 2.0;
    double idw_cutoff_deg = 10.0;
    std::optional<std::filesystem::path> map_input_csv;

    SynthConfig synth;
};

// Parses the JSON text. Unknown keys are rejected (typo protection);
// every key is optional and falls back to the defaults above.
// Throws ConfigError with the offending key path.
RunConfig parse_config(const std::string& json_text);

// Reads and parses a config file. Throws ConfigError on I/O failure.
RunConfig load_config(const std::filesystem::path& path);

// The documented schema with all defaults filled in, suitable as a
// starting config.
std::string default_config_json();

} // namespace ssmap

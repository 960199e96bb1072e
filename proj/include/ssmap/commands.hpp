#pragma once

#include <iosfwd>
#include <string>

#include "ssmap/config.hpp"

namespace ssmap {

// Output sinks so commands stay testable in-process.
struct CommandIO {
    std::ostream& out;
    std::ostream& err;
};

// Process exit codes. Every failure prints a single line to err:
//   error E_<KIND>: <message>
enum ExitCode : int {
    kOk = 0,
    kInternalError = 1,
    kConfigError = 2,
    kParseError = 3,
    kValidateError = 4,
    kIoError = 5,
};

// Generates the synthetic station set into climate_dir: one climate
// file per station plus stations.csv. Deterministic for a fixed seed.
int cmd_synth(const RunConfig& config, CommandIO& io);

// Checks every climate file in climate_dir, reporting per-file status
// and fillable gaps. Nonzero when any file fails.
int cmd_validate(const RunConfig& config, CommandIO& io);

// Simulates every station and writes <id>_performance.csv per station
// plus summary.csv (id,name,lat,lon,pf_p,pf_t) into output_dir.
int cmd_simulate(const RunConfig& config, CommandIO& io);

// Runs the parameter grid per station; writes <id>_tables.txt per
// station plus best_configs.csv into output_dir.
int cmd_sweep(const RunConfig& config, CommandIO& io);

// Interpolates one indicator field onto the configured grid. Reads the
// station table from map.input_csv (default output_dir/summary.csv)
// and writes map_stations.csv, map_stations.geojson, <field>.asc and
// <field>.ppm into output_dir.
int cmd_map(const RunConfig& config, const std::string& field, CommandIO& io);

} // namespace ssmap

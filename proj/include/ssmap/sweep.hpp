#pragma once

#include <string>
#include <vector>

#include "ssmap/indicators.hpp"

namespace ssmap {

// Cartesian grid over pipe depth and mass flow. Values must be
// strictly increasing and positive.
struct SweepGrid {
    std::vector<double> d1_values;   // m
    std::vector<double> mdot_values; // kg/s

    // 20/35/50 mm crossed with 0.5/1/2 kg/min.
    static SweepGrid default_grid();
};

struct SweepCell {
    double d1 = 0.0;   // m
    double mdot = 0.0; // kg/s
    double pf_p = 0.0; // %
    double pf_t = 0.0; // %
};

// Row-major cells: mdot varies across rows, d1 across columns.
struct SweepResult {
    SweepGrid grid;
    std::vector<SweepCell> cells; // size |mdot| * |d1|, mdot-major
    Station station;

    const SweepCell& at(std::size_t mdot_idx, std::size_t d1_idx) const;
};

struct BestConfig {
    double d1 = 0.0;   // m
    double mdot = 0.0; // kg/s
    double pf_p = 0.0; // %
    double pf_t = 0.0; // %
};

// Throws ValidationError unless both axes are non-empty, strictly
// positive, and strictly increasing.
void validate_grid(const SweepGrid& grid);

// One evaluate() per cell over the grid. Capacities are re-derived per
// cell when rederive_capacities is set (a deeper pipe means a heavier
// surface layer); otherwise the base capacities are used everywhere.
// A failing cell aborts the sweep with its coordinates in the message.
SweepResult run_sweep(const CollectorParams& base, const SweepGrid& grid,
                      const ClimateSeries& climate, double threshold = 50.0,
                      bool rederive_capacities = true);

// Cell with the highest pf_p; ties broken by higher pf_t, then lower
// mdot, then lower d1.
BestConfig best_config(const SweepResult& result);

// Two aligned text tables (efficiency, operation time), rows = mass
// flow in kg/min, columns = depth in mm, one decimal per cell.
std::string format_tables(const SweepResult& result);

} // namespace ssmap

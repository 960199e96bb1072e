#pragma once

#include <vector>

#include "ssmap/collector.hpp"

namespace ssmap {

// Annual performance of one collector configuration under one climate.
struct PerformanceResult {
    std::vector<double> pout; // hourly harvested flux [W/m^2], may be negative
    std::vector<double> p50;  // pout with sub-threshold hours zeroed [W/m^2]
    double pf_t = 0.0;        // % of hours the system can operate
    double pf_p = 0.0;        // yearly mean efficiency, 100*sum(p50)/sum(I) [%]
    double threshold = 50.0;  // operability threshold [W/m^2]
};

// Hourly output flux mdot*c*(T_ret - t_sup)/A from a collector
// trajectory; T_ret is state row 1. One value per input hour
// (end-of-hour states). Throws ValidationError on an empty trajectory.
std::vector<double> compute_pout(const Trajectory& trajectory,
                                 const CollectorParams& params);

// Zeroes every value below the threshold; values >= threshold pass
// through untouched (the boundary itself is kept).
std::vector<double> apply_threshold(const std::vector<double>& pout,
                                    double threshold);

// Percentage of samples with nonzero thresholded output.
// Throws ValidationError on an empty series.
double compute_pft(const std::vector<double>& p50);

// Yearly mean efficiency: 100 * sum(p50) / sum(irradiance).
// Throws ValidationError on length mismatch or non-positive total
// irradiance.
double compute_pfp(const std::vector<double>& p50,
                   const std::vector<double>& irradiance);

// Full pipeline: simulate, flux, threshold, both indicators.
// warmup_hours leading hours are dropped from the indicator sums
// (default 0: the initial state already sits at t_sup).
PerformanceResult evaluate(const CollectorParams& params,
                           const ClimateSeries& climate, double threshold = 50.0,
                           std::size_t warmup_hours = 0);

} // namespace ssmap

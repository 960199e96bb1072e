#include "ssmap/indicators.hpp"

#include <cmath>
#include <numeric>

#include "ssmap/errors.hpp"

namespace ssmap {

std::vector<double> compute_pout(const Trajectory& trajectory,
                                 const CollectorParams& params) {
    if (trajectory.states.rows() != 3)
        throw ValidationError("trajectory does not have 3 state rows");
    const Eigen::Index n = trajectory.steps();
    if (n <= 0) throw ValidationError("empty trajectory");

    const double scale = params.mdot * params.c / params.area; // W/(m^2*K)
    std::vector<double> pout(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        const double t_ret = trajectory.states(1, i + 1); // end-of-hour state
        pout[static_cast<std::size_t>(i)] = scale * (t_ret - params.t_sup);
    }
    return pout;
}

std::vector<double> apply_threshold(const std::vector<double>& pout,
                                    double threshold) {
    std::vector<double> p50(pout.size());
    for (std::size_t i = 0; i < pout.size(); ++i)
        p50[i] = pout[i] >= threshold ? pout[i] : 0.0;
    return p50;
}

double compute_pft(const std::vector<double>& p50) {
    if (p50.empty()) throw ValidationError("empty series in pf_t");
    std::size_t operating = 0;
    for (double v : p50)
        if (v > 0.0) ++operating;
    return 100.0 * static_cast<double>(operating) / static_cast<double>(p50.size());
}

double compute_pfp(const std::vector<double>& p50,
                   const std::vector<double>& irradiance) {
    if (p50.size() != irradiance.size())
        throw ValidationError("p50/irradiance length mismatch in pf_p");
    if (p50.empty()) throw ValidationError("empty series in pf_p");
    const double harvested = std::accumulate(p50.begin(), p50.end(), 0.0);
    const double incident =
        std::accumulate(irradiance.begin(), irradiance.end(), 0.0);
    if (!(incident > 0.0))
        throw ValidationError("total irradiance must be positive in pf_p");
    return 100.0 * harvested / incident;
}

PerformanceResult evaluate(const CollectorParams& params,
                           const ClimateSeries& climate, double threshold,
                           std::size_t warmup_hours) {
    if (!(threshold >= 0.0) || !std::isfinite(threshold))
        throw ValidationError("threshold must be >= 0");
    if (warmup_hours >= climate.records.size())
        throw ValidationError("warmup longer than the climate series");

    const Trajectory traj = simulate_collector(params, climate);

    PerformanceResult result;
    result.threshold = threshold;
    result.pout = compute_pout(traj, params);
    result.pout.erase(result.pout.begin(),
                      result.pout.begin() + static_cast<std::ptrdiff_t>(warmup_hours));
    result.p50 = apply_threshold(result.pout, threshold);

    std::vector<double> irradiance(climate.records.size() - warmup_hours);
    double total = 0.0;
    for (std::size_t i = 0; i < irradiance.size(); ++i) {
        irradiance[i] = climate.records[i + warmup_hours].isgh;
        total += irradiance[i];
    }

    result.pf_t = compute_pft(result.p50);
    // A sunless year has no meaningful efficiency; report 0 rather than
    // divide by zero.
    result.pf_p = total > 0.0 ? compute_pfp(result.p50, irradiance) : 0.0;
    return result;
}

} // namespace ssmap

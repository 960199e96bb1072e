#include "ssmap/collector.hpp"

#include <cmath>

#include "ssmap/errors.hpp"

namespace ssmap {

namespace {

constexpr double kConcreteRho = 2300.0; // kg/m^3
constexpr double kConcreteC = 880.0;    // J/(kg*K)
constexpr double kWaterRho = 1000.0;    // kg/m^3
constexpr double kWaterC = 4186.0;      // J/(kg*K)
constexpr double kWaterPerM2 = 1e-3;    // m^3 of loop water per m^2

void require_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v))
        throw ValidationError(std::string("collector parameter ") + name +
                              " must be > 0");
}

} // namespace

CollectorParams default_params() { return CollectorParams{}; }

CollectorParams derive_capacities(CollectorParams params) {
    require_positive(params.area, "area");
    require_positive(params.d1, "d1");
    require_positive(params.d2, "d2");
    if (!params.c1) params.c1 = kConcreteRho * kConcreteC * params.area * params.d1;
    if (!params.c2) params.c2 = kWaterPerM2 * params.area * kWaterRho * kWaterC;
    if (!params.c3) params.c3 = kConcreteRho * kConcreteC * params.area * params.d2;
    return params;
}

void validate_params(const CollectorParams& params) {
    if (!(params.mdot >= 0.0) || !std::isfinite(params.mdot))
        throw ValidationError("collector parameter mdot must be >= 0");
    require_positive(params.c, "c");
    if (!(params.a1 > 0.0 && params.a1 <= 1.0))
        throw ValidationError("collector parameter a1 must be in (0, 1]");
    require_positive(params.h, "h");
    require_positive(params.area, "area");
    require_positive(params.d1, "d1");
    require_positive(params.d2, "d2");
    require_positive(params.k, "k");
    if (!params.c1 || !params.c2 || !params.c3)
        throw ValidationError("collector capacities unset; call derive_capacities");
    require_positive(*params.c1, "c1");
    require_positive(*params.c2, "c2");
    require_positive(*params.c3, "c3");
    if (!std::isfinite(params.t_sup))
        throw ValidationError("collector parameter t_sup must be finite");
}

LtiSystem build_system(const CollectorParams& params) {
    validate_params(params);

    const double ha = params.h * params.area; // W/K
    const double g1 = 1.0 / params.r1();      // W/K through the surface layer
    const double g2 = 1.0 / params.r2();      // W/K through the inner layer
    const double mc = params.mdot * params.c; // W/K advected by the loop
    const double c1 = *params.c1;
    const double c2 = *params.c2;
    const double c3 = *params.c3;

    LtiSystem sys;
    sys.a = Eigen::MatrixXd::Zero(3, 3);
    sys.b = Eigen::MatrixXd::Zero(3, 3);

    // Node T1: film exchange with ambient, conduction to the pipe,
    // absorbed solar gain.
    sys.a(0, 0) = -(ha + g1) / c1;
    sys.a(0, 1) = g1 / c1;
    sys.b(0, 0) = ha / c1;
    sys.b(0, 2) = params.a1 * params.area / c1;

    // Node T2: advection from the supply plus conduction both ways.
    sys.a(1, 0) = g1 / c2;
    sys.a(1, 1) = -(mc + g1 + g2) / c2;
    sys.a(1, 2) = g2 / c2;
    sys.b(1, 1) = mc / c2;

    // Node T3: conduction with the pipe layer only.
    sys.a(2, 1) = g2 / c3;
    sys.a(2, 2) = -g2 / c3;

    sys.x0 = Eigen::VectorXd::Constant(3, params.t_sup);
    return sys;
}

InputSeries collector_inputs(const ClimateSeries& climate, double t_sup) {
    InputSeries inputs;
    inputs.dt = 3600.0;
    const auto n = static_cast<Eigen::Index>(climate.records.size());
    inputs.samples.resize(3, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        const auto& rec = climate.records[static_cast<std::size_t>(i)];
        inputs.samples(0, i) = rec.ta;
        inputs.samples(1, i) = t_sup;
        inputs.samples(2, i) = rec.isgh;
    }
    return inputs;
}

Trajectory simulate_collector(const CollectorParams& params,
                              const ClimateSeries& climate) {
    const CollectorParams full = derive_capacities(params);
    const LtiSystem sys = build_system(full);
    return simulate(sys, collector_inputs(climate, full.t_sup));
}

} // namespace ssmap

#pragma once

#include <optional>

#include "ssmap/climate.hpp"
#include "ssmap/statespace.hpp"

namespace ssmap {

// Three-node RC model of a water-carrying solar collector wall.
// States: T1 external surface [degC], T2 water return [degC],
// T3 internal wall [degC]. Inputs: ambient temperature, supply
// temperature, global irradiance on the surface.
struct CollectorParams {
    double mdot = 1.0 / 60.0; // kg/s (1 kg/min)
    double c = 4186.0;        // J/(kg*K) water
    double a1 = 0.9;          // solar absorption factor, (0, 1]
    double h = 25.0;          // W/(m^2*K) surface film coefficient
    double area = 1.0;        // m^2 collector surface
    double d1 = 0.035;        // m pipe-to-surface distance
    double d2 = 0.065;        // m pipe-to-insulation distance
    double k = 1.8;           // W/(m*K) concrete conductivity
    std::optional<double> c1; // J/K surface layer capacity
    std::optional<double> c2; // J/K water loop capacity
    std::optional<double> c3; // J/K inner wall capacity
    double t_sup = 10.0;      // degC constant supply temperature

    double r1() const { return d1 / (k * area); } // K/W
    double r2() const { return d2 / (k * area); } // K/W
};

// Documented default configuration (1 m^2 wall, 1 kg/min loop).
CollectorParams default_params();

// Fills any unset capacity from geometry: concrete layers at
// rho = 2300 kg/m^3, c = 880 J/(kg*K); water loop holds 1 L/m^2.
// Caller-supplied capacities are never overwritten.
// Throws ValidationError on non-positive geometry.
CollectorParams derive_capacities(CollectorParams params);

// Throws ValidationError unless the parameter set is physically
// sound. All quantities must be strictly positive with two
// relaxations: a1 is restricted to (0, 1], and mdot may be zero
// (a stopped pump is a legitimate structural case).
void validate_params(const CollectorParams& params);

// Assembles the 3-state, 3-input model. Input order: (t_amb, t_sup,
// irradiance). Initial state is t_sup in all nodes. Capacities must
// be set (use derive_capacities first if needed).
LtiSystem build_system(const CollectorParams& params);

// Packs a climate series into the model's input layout at dt = 3600 s:
// u(t) = (ta(t), t_sup, isgh(t)).
InputSeries collector_inputs(const ClimateSeries& climate, double t_sup);

// Full-year hourly trajectory of the collector driven by a climate
// series. T_ret is state row 1 (T2).
Trajectory simulate_collector(const CollectorParams& params,
                              const ClimateSeries& climate);

} // namespace ssmap

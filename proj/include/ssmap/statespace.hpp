#pragma once

#include <Eigen/Dense>

namespace ssmap {

// Continuous-time LTI system dx/dt = A x + B u with initial state x0.
// A is in 1/s units, so time steps are seconds.
struct LtiSystem {
    Eigen::MatrixXd a;   // n x n
    Eigen::MatrixXd b;   // n x m
    Eigen::VectorXd x0;  // n

    Eigen::Index states() const { return a.rows(); }
    Eigen::Index inputs() const { return b.cols(); }
};

// Input samples held constant over each step (zero-order hold),
// one column per step.
struct InputSeries {
    double dt = 0.0;          // seconds per step, > 0
    Eigen::MatrixXd samples;  // m x N

    Eigen::Index width() const { return samples.rows(); }
    Eigen::Index size() const { return samples.cols(); }
};

// State sequence produced by a simulation: column 0 is x0, then one
// column per input sample.
struct Trajectory {
    double dt = 0.0;
    Eigen::MatrixXd states;  // n x (N+1)

    Eigen::Index steps() const { return states.cols() - 1; }
};

// One-step transition pair for a fixed dt: x' = ad x + bd u.
struct Discretized {
    Eigen::MatrixXd ad;  // n x n
    Eigen::MatrixXd bd;  // n x m
    double dt = 0.0;
};

// Throws ValidationError on inconsistent dimensions or non-finite entries.
void check_system(const LtiSystem& sys);
void check_inputs(const LtiSystem& sys, const InputSeries& inputs);

// Exact zero-order-hold discretization:
//   ad = exp(A dt),  bd = (integral_0^dt exp(A s) ds) B,
// both obtained from one exponential of the augmented matrix
// [[A, B], [0, 0]] * dt.
Discretized discretize(const LtiSystem& sys, double dt);

// x' = ad x + bd u. Exact for an input held constant over the step.
Eigen::VectorXd step(const Discretized& dz, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& u);

// Repeated ZOH stepping from sys.x0 through every input column.
Trajectory simulate(const LtiSystem& sys, const InputSeries& inputs);

// Solves A x = -B u for the equilibrium under a constant input.
// Throws ValidationError when A is singular.
Eigen::VectorXd steady_state(const LtiSystem& sys, const Eigen::VectorXd& u_const);

// Classical RK4 with `substeps` internal steps per input sample, input held
// constant across the sample. Independent cross-check for simulate().
Trajectory rk4_simulate(const LtiSystem& sys, const InputSeries& inputs, int substeps);

} // namespace ssmap

#include "ssmap/statespace.hpp"

#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <string>

#include "ssmap/errors.hpp"

namespace ssmap {

void check_system(const LtiSystem& sys) {
    const auto n = sys.a.rows();
    if (n == 0 || sys.a.cols() != n)
        throw ValidationError("state matrix must be square and non-empty");
    if (sys.b.rows() != n || sys.b.cols() == 0)
        throw ValidationError("input matrix rows must match state count");
    if (sys.x0.size() != n)
        throw ValidationError("initial state size must match state count");
    if (!sys.a.allFinite() || !sys.b.allFinite() || !sys.x0.allFinite())
        throw ValidationError("system matrices must be finite");
}

void check_inputs(const LtiSystem& sys, const InputSeries& inputs) {
    if (inputs.dt <= 0.0 || !std::isfinite(inputs.dt))
        throw ValidationError("input dt must be positive and finite");
    if (inputs.size() < 1)
        throw ValidationError("input series must contain at least one sample");
    if (inputs.width() != sys.inputs())
        throw ValidationError("input width " + std::to_string(inputs.width()) +
                              " does not match system input count " +
                              std::to_string(sys.inputs()));
    if (!inputs.samples.allFinite())
        throw ValidationError("input samples must be finite");
}

Discretized discretize(const LtiSystem& sys, double dt) {
    check_system(sys);
    if (dt <= 0.0 || !std::isfinite(dt))
        throw ValidationError("dt must be positive and finite");

    const auto n = sys.states();
    const auto m = sys.inputs();

    // exp([[A, B], [0, 0]] dt) = [[ad, bd], [0, I]]
    Eigen::MatrixXd aug = Eigen::MatrixXd::Zero(n + m, n + m);
    aug.topLeftCorner(n, n) = sys.a * dt;
    aug.topRightCorner(n, m) = sys.b * dt;
    const Eigen::MatrixXd e = aug.exp();

    Discretized dz;
    dz.ad = e.topLeftCorner(n, n);
    dz.bd = e.topRightCorner(n, m);
    dz.dt = dt;
    if (!dz.ad.allFinite() || !dz.bd.allFinite())
        throw ValidationError("matrix exponential overflowed; A dt too large");
    return dz;
}

Eigen::VectorXd step(const Discretized& dz, const Eigen::VectorXd& x,
                     const Eigen::VectorXd& u) {
    if (x.size() != dz.ad.cols())
        throw ValidationError("state size does not match transition matrix");
    if (u.size() != dz.bd.cols())
        throw ValidationError("input size does not match input matrix");
    return dz.ad * x + dz.bd * u;
}

Trajectory simulate(const LtiSystem& sys, const InputSeries& inputs) {
    check_inputs(sys, inputs);
    const Discretized dz = discretize(sys, inputs.dt);

    const auto steps = inputs.size();
    Trajectory traj;
    traj.dt = inputs.dt;
    traj.states.resize(sys.states(), steps + 1);
    traj.states.col(0) = sys.x0;

    Eigen::VectorXd x = sys.x0;
    for (Eigen::Index i = 0; i < steps; ++i) {
        x = dz.ad * x + dz.bd * inputs.samples.col(i);
        traj.states.col(i + 1) = x;
    }
    if (!traj.states.allFinite())
        throw ValidationError("simulation diverged to non-finite state");
    return traj;
}

Eigen::VectorXd steady_state(const LtiSystem& sys, const Eigen::VectorXd& u_const) {
    check_system(sys);
    if (u_const.size() != sys.inputs())
        throw ValidationError("constant input size does not match input count");

    Eigen::FullPivLU<Eigen::MatrixXd> lu(sys.a);
    if (!lu.isInvertible())
        throw ValidationError("state matrix is singular; no unique steady state");

    const Eigen::VectorXd rhs = -(sys.b * u_const);
    const Eigen::VectorXd x = lu.solve(rhs);

    const double residual = (sys.a * x - rhs).norm();
    const double bound = 1e-10 * std::max(rhs.norm(), 1.0);
    if (residual > bound)
        throw ValidationError("steady-state solve residual " + std::to_string(residual) +
                              " exceeds tolerance");
    return x;
}

Trajectory rk4_simulate(const LtiSystem& sys, const InputSeries& inputs, int substeps) {
    check_inputs(sys, inputs);
    if (substeps < 1)
        throw ValidationError("substeps must be >= 1");

    const double h = inputs.dt / substeps;
    const auto steps = inputs.size();

    Trajectory traj;
    traj.dt = inputs.dt;
    traj.states.resize(sys.states(), steps + 1);
    traj.states.col(0) = sys.x0;

    Eigen::VectorXd x = sys.x0;
    Eigen::VectorXd k1, k2, k3, k4;
    for (Eigen::Index i = 0; i < steps; ++i) {
        const Eigen::VectorXd bu = sys.b * inputs.samples.col(i);
        for (int s = 0; s < substeps; ++s) {
            k1 = sys.a * x + bu;
            k2 = sys.a * (x + 0.5 * h * k1) + bu;
            k3 = sys.a * (x + 0.5 * h * k2) + bu;
            k4 = sys.a * (x + h * k3) + bu;
            x = x + (h / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        }
        traj.states.col(i + 1) = x;
    }
    if (!traj.states.allFinite())
        throw ValidationError("RK4 simulation diverged to non-finite state");
    return traj;
}

} // namespace ssmap

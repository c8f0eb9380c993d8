#pragma once

#include "stefan/geometry.hpp"
#include "stefan/linsolve.hpp"
#include "stefan/problems.hpp"
#include "stefan/sampling.hpp"
#include "stefan/thermo.hpp"

#include <Eigen/Dense>

namespace stefan {

struct FluxResidual {
    Eigen::VectorXd values;     // beta V_n - jump, per interface sample
    Eigen::VectorXd jump;       // (a_1 grad u_1 - a_2 grad u_2) . n
    Eigen::VectorXd stefan;     // beta at each sample
    double l2_norm = 0.0;       // root mean square of values
};

/// Flux jump (a_1 grad u_1 - a_2 grad u_2) . n at interface samples.
Eigen::VectorXd flux_jump(const ProblemSpec& problem, const FieldSolution& sol,
                          const InterfaceSamples& s);

FluxResidual flux_residual(const ProblemSpec& problem, const FieldSolution& sol,
                           const InterfaceSamples& s);

/// Anchor rows pinning G(., t_start; c) to the initial interface.
struct Anchor {
    Eigen::MatrixXd param;
    Eigen::VectorXd time;
    Eigen::VectorXd target;
    double weight = 10.0; // lambda_anchor, spread over the rows
};

Anchor make_anchor(const ProblemSpec& problem, int count, double weight);

struct KinematicResult {
    Eigen::VectorXd coeffs;
    LstsqResult solve;
};

/// Objective rows of the kinematic fit, so callers can evaluate it.
struct KinematicSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
};

/// Rows  beta_i (d_t Psi(z_i) . c) / metric_i = jump_i  scaled by 1/sqrt(N),
/// followed by the anchor rows. Metric and jump are frozen.
KinematicSystem kinematic_system(const ProblemSpec& problem, const InterfaceModel& model,
                                 const InterfaceSamples& s, const Eigen::VectorXd& jump,
                                 const Anchor& anchor);

KinematicResult kinematic_step(const ProblemSpec& problem, const InterfaceModel& model,
                               const InterfaceSamples& s, const Eigen::VectorXd& jump,
                               const Anchor& anchor, double rcond);

/// c = (1 - rho) c_prev + rho c_tilde.
Eigen::VectorXd relax_update(const Eigen::VectorXd& c_prev, const Eigen::VectorXd& c_tilde, double rho);

} // namespace stefan

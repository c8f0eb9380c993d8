#pragma once

#include "stefan/basis.hpp"

#include <Eigen/Dense>

#include <optional>
#include <string>

namespace stefan {

/// How the coefficient vector c maps to an interface.
///   ScalarTime   x = G(t)                 basis input (t)
///   GraphY       x = G(y, t)              basis input (y, t)
///   RadialTheta  r = G(theta, t)          basis input (cos theta, sin theta[, t])
///   RadialSym    r = G(t)                 basis input (t)
enum class ShapeMode { ScalarTime, GraphY, RadialTheta, RadialSym };

const char* to_string(ShapeMode mode);
ShapeMode shape_mode_from_string(const std::string& name);

/// Number of shape parameters besides time (0 or 1).
int param_dim(ShapeMode mode);
/// Number of spatial coordinates of the field the shape lives in
/// (RadialSym works in the reduced radial coordinate).
int spatial_dim(ShapeMode mode);
/// Width of the interface basis input.
int shape_input_dim(ShapeMode mode, bool transient);

struct InterfaceModel {
    RandomFeatureBasis basis;
    Eigen::VectorXd coeffs;
    ShapeMode mode = ShapeMode::ScalarTime;
    bool transient = true;
    /// Optional clamp applied to the shape value when locating the interface
    /// inside the fixed domain (positions, classification).
    std::optional<std::pair<double, double>> clamp;

    InterfaceModel(RandomFeatureBasis b, Eigen::VectorXd c, ShapeMode m, bool transient_ = true);
    InterfaceModel with_coeffs(Eigen::VectorXd c) const;
};

/// Shape value and derivatives at one (param, t).
struct ShapeJet {
    double g = 0.0;
    double g_p = 0.0;  // d/dparam
    double g_pp = 0.0; // d2/dparam2
    double g_t = 0.0;
};

/// Linear maps c -> ShapeJet components for a list of samples (one per row).
struct ShapeRows {
    Eigen::MatrixXd value;
    Eigen::MatrixXd dp;
    Eigen::MatrixXd dpp;
    Eigen::MatrixXd dt;
};

/// params: n x param_dim (may have zero columns), times: n.
ShapeRows shape_rows(const RandomFeatureBasis& basis, ShapeMode mode, bool transient,
                     const Eigen::MatrixXd& params, const Eigen::VectorXd& times);

ShapeJet shape_jet(const InterfaceModel& model, const Eigen::VectorXd& param, double t);

struct InterfacePoint {
    Eigen::VectorXd position;
    double time = 0.0;
    Eigen::VectorXd normal;
    double normal_velocity = 0.0;
    double curvature = 0.0;
    double metric = 1.0; // V_n = G_t / metric
};

/// Geometry of a shape jet. position uses the unclamped value.
InterfacePoint interface_from_jet(ShapeMode mode, const Eigen::VectorXd& param, double t,
                                  const ShapeJet& jet);

InterfacePoint interface_point(const InterfaceModel& model, const Eigen::VectorXd& param, double t);
Eigen::VectorXd interface_position(const InterfaceModel& model, const Eigen::VectorXd& param,
                                   double t);
Eigen::VectorXd interface_normal(const InterfaceModel& model, const Eigen::VectorXd& param, double t);
double interface_normal_velocity(const InterfaceModel& model, const Eigen::VectorXd& param, double t);
double interface_curvature(const InterfaceModel& model, const Eigen::VectorXd& param, double t);

/// Apply the model clamp (if any) to a shape value.
double clamp_shape(const InterfaceModel& model, double g);

/// Signed offset of a spatial point from the (clamped) interface at time t.
/// Negative means phase 1 (left / inner), positive means phase 2.
double signed_offset(const InterfaceModel& model, const Eigen::VectorXd& x, double t);

/// Shape parameter and shape-normal coordinate of a spatial point.
Eigen::VectorXd param_of_point(ShapeMode mode, const Eigen::VectorXd& x);

struct FitResult {
    Eigen::VectorXd coeffs;
    double rms_residual = 0.0;
};

/// Least-squares fit of sum c_m Psi_m to target shape values.
FitResult fit_interface(const RandomFeatureBasis& basis, ShapeMode mode, bool transient,
                        const Eigen::MatrixXd& params, const Eigen::VectorXd& times,
                        const Eigen::VectorXd& targets, double rcond = 1e-15);

} // namespace stefan

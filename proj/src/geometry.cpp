#include "stefan/geometry.hpp"

#include "stefan/error.hpp"
#include "stefan/linsolve.hpp"

#include <cmath>

namespace stefan {

const char* to_string(ShapeMode mode) {
    switch (mode) {
    case ShapeMode::ScalarTime: return "scalar_time";
    case ShapeMode::GraphY: return "graph_y";
    case ShapeMode::RadialTheta: return "radial_theta";
    case ShapeMode::RadialSym: return "radial_sym";
    }
    return "?";
}

ShapeMode shape_mode_from_string(const std::string& name) {
    for (ShapeMode m : {ShapeMode::ScalarTime, ShapeMode::GraphY, ShapeMode::RadialTheta,
                        ShapeMode::RadialSym})
        if (name == to_string(m)) return m;
    throw Error(ErrorKind::InvalidArgument, "unknown shape mode '" + name + "'");
}

int param_dim(ShapeMode mode) {
    return (mode == ShapeMode::GraphY || mode == ShapeMode::RadialTheta) ? 1 : 0;
}

int spatial_dim(ShapeMode mode) { return param_dim(mode) + 1; }

int shape_input_dim(ShapeMode mode, bool transient) {
    const int t = transient ? 1 : 0;
    switch (mode) {
    case ShapeMode::ScalarTime:
    case ShapeMode::RadialSym: return 1;
    case ShapeMode::GraphY: return 1 + t;
    case ShapeMode::RadialTheta: return 2 + t;
    }
    return 1;
}

InterfaceModel::InterfaceModel(RandomFeatureBasis b, Eigen::VectorXd c, ShapeMode m, bool transient_)
    : basis(std::move(b)), coeffs(std::move(c)), mode(m), transient(transient_) {
    if (coeffs.size() != basis.count())
        throw Error(ErrorKind::DimensionMismatch, "coefficient length differs from basis count");
    if (basis.input_dim() != shape_input_dim(mode, transient))
        throw Error(ErrorKind::DimensionMismatch, "interface basis input width does not fit mode");
}

InterfaceModel InterfaceModel::with_coeffs(Eigen::VectorXd c) const {
    InterfaceModel out(basis, std::move(c), mode, transient);
    out.clamp = clamp;
    return out;
}

ShapeRows shape_rows(const RandomFeatureBasis& basis, ShapeMode mode, bool transient,
                     const Eigen::MatrixXd& params, const Eigen::VectorXd& times) {
    const Eigen::Index n = times.size();
    if (params.rows() != n || params.cols() != param_dim(mode))
        throw Error(ErrorKind::DimensionMismatch, "shape sample arrays disagree");
    const int width = shape_input_dim(mode, transient);
    if (basis.input_dim() != width)
        throw Error(ErrorKind::DimensionMismatch, "interface basis input width does not fit mode");
    if (!transient && (mode == ShapeMode::ScalarTime || mode == ShapeMode::RadialSym))
        throw Error(ErrorKind::InvalidArgument, "time-only shape modes must be transient");

    Eigen::MatrixXd z(n, width);
    Eigen::VectorXd cth, sth;
    switch (mode) {
    case ShapeMode::ScalarTime:
    case ShapeMode::RadialSym: z.col(0) = times; break;
    case ShapeMode::GraphY:
        z.col(0) = params.col(0);
        if (transient) z.col(1) = times;
        break;
    case ShapeMode::RadialTheta:
        cth = params.col(0).array().cos().matrix();
        sth = params.col(0).array().sin().matrix();
        z.col(0) = cth;
        z.col(1) = sth;
        if (transient) z.col(2) = times;
        break;
    }

    FeatureTable tab(basis, z);
    const Eigen::Index m = basis.count();
    ShapeRows rows;
    rows.value = tab.value();
    rows.dp = Eigen::MatrixXd::Zero(n, m);
    rows.dpp = Eigen::MatrixXd::Zero(n, m);
    rows.dt = Eigen::MatrixXd::Zero(n, m);
    switch (mode) {
    case ShapeMode::ScalarTime:
    case ShapeMode::RadialSym: rows.dt = tab.d(0); break;
    case ShapeMode::GraphY:
        rows.dp = tab.d(0);
        rows.dpp = tab.dd(0, 0);
        if (transient) rows.dt = tab.d(1);
        break;
    case ShapeMode::RadialTheta: {
        // chain rule through (cos theta, sin theta)
        Eigen::MatrixXd d0 = tab.d(0), d1 = tab.d(1);
        rows.dp = -(sth.asDiagonal() * d0) + cth.asDiagonal() * d1;
        Eigen::VectorXd ss = sth.cwiseProduct(sth), cc = cth.cwiseProduct(cth),
                        sc = sth.cwiseProduct(cth);
        rows.dpp = ss.asDiagonal() * tab.dd(0, 0) - 2.0 * (sc.asDiagonal() * tab.dd(0, 1)) +
                   cc.asDiagonal() * tab.dd(1, 1) - cth.asDiagonal() * d0 - sth.asDiagonal() * d1;
        if (transient) rows.dt = tab.d(2);
        break;
    }
    }
    return rows;
}

ShapeJet shape_jet(const InterfaceModel& model, const Eigen::VectorXd& param, double t) {
    if (param.size() != param_dim(model.mode))
        throw Error(ErrorKind::DimensionMismatch, "shape parameter has wrong length");
    Eigen::MatrixXd p = param.transpose();
    Eigen::VectorXd tt(1);
    tt(0) = t;
    ShapeRows r = shape_rows(model.basis, model.mode, model.transient, p, tt);
    ShapeJet j;
    j.g = r.value.row(0).dot(model.coeffs);
    j.g_p = r.dp.row(0).dot(model.coeffs);
    j.g_pp = r.dpp.row(0).dot(model.coeffs);
    j.g_t = r.dt.row(0).dot(model.coeffs);
    return j;
}

InterfacePoint interface_from_jet(ShapeMode mode, const Eigen::VectorXd& param, double t,
                                  const ShapeJet& jet) {
    InterfacePoint p;
    p.time = t;
    switch (mode) {
    case ShapeMode::ScalarTime:
    case ShapeMode::RadialSym:
        if (mode == ShapeMode::RadialSym && !(jet.g > 0))
            throw Error(ErrorKind::DegenerateGeometry, "non-positive radius");
        p.position = Eigen::VectorXd::Constant(1, jet.g);
        p.normal = Eigen::VectorXd::Ones(1);
        p.metric = 1.0;
        p.curvature = mode == ShapeMode::RadialSym ? 1.0 / jet.g : 0.0;
        break;
    case ShapeMode::GraphY: {
        const double s = std::sqrt(1.0 + jet.g_p * jet.g_p);
        p.position = Eigen::Vector2d(jet.g, param(0));
        p.normal = Eigen::Vector2d(1.0 / s, -jet.g_p / s);
        p.metric = s;
        p.curvature = -jet.g_pp / (s * s * s);
        break;
    }
    case ShapeMode::RadialTheta: {
        if (!(jet.g > 0)) throw Error(ErrorKind::DegenerateGeometry, "non-positive radius");
        const double th = param(0), c = std::cos(th), s = std::sin(th);
        const double q2 = jet.g * jet.g + jet.g_p * jet.g_p, q = std::sqrt(q2);
        if (q < 1e-14) throw Error(ErrorKind::DegenerateGeometry, "vanishing normal");
        p.position = Eigen::Vector2d(jet.g * c, jet.g * s);
        // n = (G e_r - G_theta e_theta) / |.|
        p.normal = Eigen::Vector2d((jet.g * c + jet.g_p * s) / q, (jet.g * s - jet.g_p * c) / q);
        p.metric = q / jet.g;
        p.curvature = (q2 + jet.g_p * jet.g_p - jet.g * jet.g_pp) / (q2 * q);
        break;
    }
    }
    p.normal_velocity = jet.g_t / p.metric;
    return p;
}

InterfacePoint interface_point(const InterfaceModel& model, const Eigen::VectorXd& param, double t) {
    return interface_from_jet(model.mode, param, t, shape_jet(model, param, t));
}

Eigen::VectorXd interface_position(const InterfaceModel& model, const Eigen::VectorXd& param,
                                   double t) {
    return interface_point(model, param, t).position;
}

Eigen::VectorXd interface_normal(const InterfaceModel& model, const Eigen::VectorXd& param, double t) {
    return interface_point(model, param, t).normal;
}

double interface_normal_velocity(const InterfaceModel& model, const Eigen::VectorXd& param, double t) {
    return interface_point(model, param, t).normal_velocity;
}

double interface_curvature(const InterfaceModel& model, const Eigen::VectorXd& param, double t) {
    return interface_point(model, param, t).curvature;
}

double clamp_shape(const InterfaceModel& model, double g) {
    if (!model.clamp) return g;
    return std::min(std::max(g, model.clamp->first), model.clamp->second);
}

Eigen::VectorXd param_of_point(ShapeMode mode, const Eigen::VectorXd& x) {
    switch (mode) {
    case ShapeMode::GraphY: return Eigen::VectorXd::Constant(1, x(1));
    case ShapeMode::RadialTheta: return Eigen::VectorXd::Constant(1, std::atan2(x(1), x(0)));
    default: return Eigen::VectorXd(0);
    }
}

double signed_offset(const InterfaceModel& model, const Eigen::VectorXd& x, double t) {
    const Eigen::VectorXd p = param_of_point(model.mode, x);
    const double g = clamp_shape(model, shape_jet(model, p, t).g);
    if (model.mode == ShapeMode::RadialTheta) return x.head(2).norm() - g;
    return x(0) - g;
}

FitResult fit_interface(const RandomFeatureBasis& basis, ShapeMode mode, bool transient,
                        const Eigen::MatrixXd& params, const Eigen::VectorXd& times,
                        const Eigen::VectorXd& targets, double rcond) {
    if (targets.size() != times.size())
        throw Error(ErrorKind::DimensionMismatch, "fit targets and samples disagree");
    if (times.size() < 1) throw Error(ErrorKind::InsufficientData, "no fit samples");
    ShapeRows rows = shape_rows(basis, mode, transient, params, times);
    LstsqResult r = solve_lstsq(rows.value, targets, rcond);
    FitResult out;
    out.coeffs = r.solution;
    out.rms_residual = r.residual_norm / std::sqrt(static_cast<double>(times.size()));
    return out;
}

} // namespace stefan

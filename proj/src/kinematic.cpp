#include "stefan/kinematic.hpp"

#include "stefan/error.hpp"

#include <cmath>

namespace stefan {

Eigen::VectorXd flux_jump(const ProblemSpec& p, const FieldSolution& sol, const InterfaceSamples& s) {
    Eigen::VectorXd j = Eigen::VectorXd::Zero(s.size());
    if (p.phases[0].active) j += p.phases[0].flux_weight * eval_normal_derivative(sol, 0, s);
    if (p.phases[1].active) j -= p.phases[1].flux_weight * eval_normal_derivative(sol, 1, s);
    return j;
}

FluxResidual flux_residual(const ProblemSpec& p, const FieldSolution& sol, const InterfaceSamples& s) {
    FluxResidual r;
    r.jump = flux_jump(p, sol, s);
    r.stefan.resize(s.size());
    for (int i = 0; i < s.size(); ++i) r.stefan(i) = p.stefan_coeff(s.time(i));
    r.values = r.stefan.cwiseProduct(s.normal_velocity) - r.jump;
    r.l2_norm = s.size() > 0 ? std::sqrt(r.values.squaredNorm() / s.size()) : 0.0;
    return r;
}

Anchor make_anchor(const ProblemSpec& p, int count, double weight) {
    Anchor a;
    a.weight = weight;
    const int pd = param_dim(p.mode);
    const int n = pd == 0 ? 1 : std::max(count, 1);
    a.param.resize(n, pd);
    a.time = Eigen::VectorXd::Constant(n, p.t_start);
    a.target.resize(n);
    for (int i = 0; i < n; ++i) {
        if (pd == 1) {
            // midpoints of a uniform split of the parameter range
            const double u = (i + 0.5) / n;
            a.param(i, 0) = p.param_range.first + u * (p.param_range.second - p.param_range.first);
        }
        a.target(i) = p.gamma0(a.param.row(i).transpose());
    }
    return a;
}

KinematicSystem kinematic_system(const ProblemSpec& p, const InterfaceModel& model,
                                 const InterfaceSamples& s, const Eigen::VectorXd& jump,
                                 const Anchor& anchor) {
    const int n = s.size();
    if (jump.size() != n) throw Error(ErrorKind::DimensionMismatch, "flux jump length");
    const int m = model.basis.count();
    ShapeRows rows = shape_rows(model.basis, model.mode, model.transient, s.param, s.time);
    ShapeRows arows = shape_rows(model.basis, model.mode, model.transient, anchor.param, anchor.time);
    const int na = static_cast<int>(anchor.time.size());

    KinematicSystem sys;
    sys.matrix.resize(n + na, m);
    sys.rhs.resize(n + na);
    const double w = 1.0 / std::sqrt(static_cast<double>(n));
    for (int i = 0; i < n; ++i) {
        const double beta = p.stefan_coeff(s.time(i));
        sys.matrix.row(i) = (w * beta / s.metric(i)) * rows.dt.row(i);
        sys.rhs(i) = w * jump(i);
    }
    const double wa = std::sqrt(anchor.weight / na);
    sys.matrix.bottomRows(na) = wa * arows.value;
    sys.rhs.tail(na) = wa * anchor.target;
    return sys;
}

KinematicResult kinematic_step(const ProblemSpec& p, const InterfaceModel& model,
                               const InterfaceSamples& s, const Eigen::VectorXd& jump,
                               const Anchor& anchor, double rcond) {
    KinematicSystem sys = kinematic_system(p, model, s, jump, anchor);
    KinematicResult r;
    r.solve = solve_lstsq(sys.matrix, sys.rhs, rcond);
    r.coeffs = r.solve.solution;
    return r;
}

Eigen::VectorXd relax_update(const Eigen::VectorXd& c_prev, const Eigen::VectorXd& c_tilde, double rho) {
    if (!(rho > 0.0 && rho <= 1.0)) throw Error(ErrorKind::InvalidArgument, "rho must lie in (0, 1]");
    if (c_prev.size() != c_tilde.size()) throw Error(ErrorKind::DimensionMismatch, "coefficient lengths");
    return (1.0 - rho) * c_prev + rho * c_tilde;
}

} // namespace stefan

#include "stefan/thermo.hpp"

#include "stefan/error.hpp"
#include "stefan/linsolve.hpp"

#include <cmath>

namespace stefan {

FieldValue eval_field(const FieldSolution& sol, int phase, const Eigen::VectorXd& x, double t) {
    const int d = sol.dim;
    FieldValue v;
    v.grad = Eigen::VectorXd::Zero(d);
    if (!sol.active[phase] || !sol.basis[phase]) return v;
    Eigen::MatrixXd z(1, d + (sol.transient ? 1 : 0));
    z.row(0).head(d) = x.head(d).transpose();
    if (sol.transient) z(0, d) = t;
    FeatureTable tab(*sol.basis[phase], z);
    const Eigen::VectorXd& w = sol.weights[phase];
    v.u = tab.value().row(0).dot(w);
    for (int k = 0; k < d; ++k) v.grad(k) = tab.d(k).row(0).dot(w);
    if (sol.transient) v.u_t = tab.d(d).row(0).dot(w);
    return v;
}

Eigen::VectorXd eval_field_values(const FieldSolution& sol, int phase, const Eigen::MatrixXd& points) {
    if (!sol.active[phase] || !sol.basis[phase]) return Eigen::VectorXd::Zero(points.rows());
    return FeatureTable(*sol.basis[phase], points).value() * sol.weights[phase];
}

namespace {

Eigen::MatrixXd normal_derivative_rows(const FeatureTable& tab, const Eigen::MatrixXd& normal) {
    Eigen::MatrixXd out = Eigen::MatrixXd::Zero(tab.rows(), tab.value().cols());
    for (int k = 0; k < normal.cols(); ++k) out += normal.col(k).asDiagonal() * tab.d(k);
    return out;
}

void append(AssembledSystem& sys, const std::string& label, double lambda, const Eigen::MatrixXd& rows,
            const Eigen::VectorXd& rhs) {
    const int n = static_cast<int>(rows.rows());
    if (n == 0) return;
    const double s = std::sqrt(lambda / n);
    const int begin = static_cast<int>(sys.matrix.rows());
    sys.matrix.conservativeResize(begin + n, rows.cols());
    sys.rhs.conservativeResize(begin + n);
    sys.matrix.bottomRows(n) = s * rows;
    sys.rhs.tail(n) = s * rhs;
    sys.blocks.push_back({label, begin, n, lambda});
}

} // namespace

Eigen::VectorXd eval_normal_derivative(const FieldSolution& sol, int phase, const InterfaceSamples& s) {
    if (!sol.active[phase] || !sol.basis[phase]) return Eigen::VectorXd::Zero(s.size());
    FeatureTable tab(*sol.basis[phase], s.points);
    return normal_derivative_rows(tab, s.normal) * sol.weights[phase];
}

AssembledSystem assemble(const ProblemSpec& p, int phase, const CollocationSet& pts,
                         const RandomFeatureBasis& basis, const Penalties& pen,
                         const Eigen::VectorXd* other_phase_values) {
    const PhaseSpec& ph = p.phases[phase];
    const PhasePoints& pp = pts.phase[phase];
    const int d = p.dim;
    const int n = basis.count();
    if (basis.input_dim() != p.space_time_dim())
        throw Error(ErrorKind::DimensionMismatch, "field basis width differs from space-time dim");

    AssembledSystem sys;
    sys.matrix.resize(0, n);
    sys.rhs.resize(0);

    auto point_x = [&](const Eigen::MatrixXd& m, int r) { return Eigen::VectorXd(m.row(r).head(d).transpose()); };
    auto point_t = [&](const Eigen::MatrixXd& m, int r) { return p.transient ? m(r, d) : 0.0; };

    {
        const Eigen::MatrixXd& z = pp.interior;
        FeatureTable tab(basis, z);
        Eigen::MatrixXd lap = Eigen::MatrixXd::Zero(z.rows(), n);
        for (int k = 0; k < d; ++k) lap += tab.dd(k, k);
        if (ph.radial_order != 0) {
            Eigen::VectorXd inv_r = z.col(0).cwiseInverse() * static_cast<double>(ph.radial_order);
            lap += inv_r.asDiagonal() * tab.d(0);
        }
        Eigen::MatrixXd op = -ph.k * lap;
        if (p.transient) op += ph.capacity * tab.d(d);
        Eigen::VectorXd f = Eigen::VectorXd::Zero(z.rows());
        if (ph.source)
            for (int r = 0; r < z.rows(); ++r) f(r) = ph.source(point_x(z, r), point_t(z, r));
        append(sys, "pde", pen.pde, op, f);
    }

    if (p.transient && pp.initial.rows() > 0) {
        const Eigen::MatrixXd& z = pp.initial;
        FeatureTable tab(basis, z);
        Eigen::VectorXd g(z.rows());
        for (int r = 0; r < z.rows(); ++r) g(r) = ph.initial(point_x(z, r));
        append(sys, "initial", pen.initial, tab.value(), g);
    }

    if (pp.boundary.rows() > 0) {
        const Eigen::MatrixXd& z = pp.boundary;
        FeatureTable tab(basis, z);
        Eigen::MatrixXd rows(z.rows(), n);
        Eigen::VectorXd g(z.rows());
        Eigen::MatrixXd val = tab.value();
        std::vector<Eigen::MatrixXd> grads;
        for (int k = 0; k < d; ++k) grads.push_back(tab.d(k));
        for (int r = 0; r < z.rows(); ++r) {
            const BoundaryFace& f = p.faces[static_cast<size_t>(pp.boundary_face[static_cast<size_t>(r)])];
            if (f.kind == BcKind::Dirichlet) {
                rows.row(r) = val.row(r);
            } else {
                rows.row(r).setZero();
                for (int k = 0; k < d; ++k) rows.row(r) += f.direction(k) * grads[static_cast<size_t>(k)].row(r);
            }
            g(r) = f.data(phase, point_x(z, r), point_t(z, r));
        }
        append(sys, "boundary", pen.boundary, rows, g);
    }

    {
        const InterfaceSamples& s = pts.interface;
        FeatureTable tab(basis, s.points);
        Eigen::MatrixXd rows = tab.value();
        Eigen::VectorXd g = Eigen::VectorXd::Constant(s.size(), p.melt_value);
        switch (p.condition) {
        case InterfaceCondition::Continuity: break;
        case InterfaceCondition::GibbsThomson:
            g = -p.surface_tension * s.curvature;
            break;
        case InterfaceCondition::ThermalResistance:
            if (phase == 1) {
                // u_l + R k_l du_l/dn = u_s
                if (!other_phase_values)
                    throw Error(ErrorKind::InvalidArgument, "thermal resistance rows need phase 1 values");
                rows += p.resistance * ph.k * normal_derivative_rows(tab, s.normal);
                g = *other_phase_values;
            }
            break;
        }
        append(sys, "interface", pen.interface, rows, g);
    }

    if (!sys.matrix.allFinite() || !sys.rhs.allFinite())
        throw Error(ErrorKind::NonFinite, "assembled system has non-finite entries");
    return sys;
}

ThermoResult thermo_step(const ProblemSpec& p, const CollocationSet& pts,
                         const std::array<BasisPtr, 2>& bases, const Penalties& pen, double rcond) {
    ThermoResult out;
    FieldSolution& sol = out.solution;
    sol.basis = bases;
    sol.dim = p.dim;
    sol.transient = p.transient;
    for (int i = 0; i < 2; ++i) {
        sol.k[i] = p.phases[i].k;
        sol.active[i] = p.phases[i].active;
        if (bases[i]) sol.weights[i] = Eigen::VectorXd::Zero(bases[i]->count());
    }
    // phase 1 first: the thermal resistance rows of phase 2 read its values
    Eigen::VectorXd phase1_values;
    for (int i = 0; i < 2; ++i) {
        if (!p.phases[i].active) continue;
        if (!bases[i]) throw Error(ErrorKind::InvalidArgument, "active phase without a basis");
        const Eigen::VectorXd* other = nullptr;
        if (i == 1 && p.condition == InterfaceCondition::ThermalResistance) {
            phase1_values = eval_field_values(sol, 0, pts.interface.points);
            other = &phase1_values;
        }
        AssembledSystem sys = assemble(p, i, pts, *bases[i], pen, other);
        LstsqResult r = solve_lstsq(sys.matrix, sys.rhs, rcond);
        sol.weights[i] = r.solution;
        out.rank[i] = r.effective_rank;
        Eigen::VectorXd res = sys.matrix * r.solution - sys.rhs;
        for (const RowBlock& b : sys.blocks)
            out.block_residuals[i].push_back({b.label, res.segment(b.begin, b.count).norm()});
    }
    return out;
}

} // namespace stefan

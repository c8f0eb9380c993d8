#include "stefan/metrics.hpp"

#include "stefan/error.hpp"
#include "stefan/rng.hpp"

#include <cmath>

namespace stefan {

RelativeL2 relative_l2(const Eigen::VectorXd& pred, const Eigen::VectorXd& exact) {
    if (pred.size() != exact.size()) throw Error(ErrorKind::DimensionMismatch, "relative_l2 lengths");
    if (pred.size() < 1) throw Error(ErrorKind::InsufficientData, "relative_l2 of empty arrays");
    const double num = (pred - exact).norm();
    const double den = exact.norm();
    if (den == 0.0) return {num, true};
    return {num / den, false};
}

namespace {

void require_exact(const ProblemSpec& p) {
    if (!p.has_exact()) throw Error(ErrorKind::NoExactSolution, p.name + " has no exact solution");
}

double lin(const Interval& iv, int i, int n) {
    return n == 1 ? 0.5 * (iv.first + iv.second)
                  : iv.first + (iv.second - iv.first) * static_cast<double>(i) / (n - 1);
}

} // namespace

FieldGrid field_grid(const ProblemSpec& p) {
    require_exact(p);
    const int d = p.dim;
    const int width = p.space_time_dim();
    std::vector<Interval> axes = p.eval_box.empty() ? p.box : p.eval_box;
    if (p.transient) axes.push_back({p.t_start, p.t_end});

    std::vector<Eigen::VectorXd> cand;
    if (!p.field_grid.tensor.empty()) {
        if (static_cast<int>(p.field_grid.tensor.size()) != width)
            throw Error(ErrorKind::DimensionMismatch, "field grid rank differs from space-time dim");
        std::vector<int> idx(static_cast<size_t>(width), 0);
        while (true) {
            Eigen::VectorXd z(width);
            for (int a = 0; a < width; ++a) z(a) = lin(axes[static_cast<size_t>(a)], idx[static_cast<size_t>(a)], p.field_grid.tensor[static_cast<size_t>(a)]);
            cand.push_back(z);
            int a = 0;
            for (; a < width; ++a) {
                if (++idx[static_cast<size_t>(a)] < p.field_grid.tensor[static_cast<size_t>(a)]) break;
                idx[static_cast<size_t>(a)] = 0;
            }
            if (a == width) break;
        }
    } else {
        Rng rng(p.field_grid.seed);
        for (int i = 0; i < p.field_grid.random_points; ++i) {
            Eigen::VectorXd z(width);
            for (int a = 0; a < width; ++a) z(a) = rng.uniform(axes[static_cast<size_t>(a)].first, axes[static_cast<size_t>(a)].second);
            cand.push_back(z);
        }
    }

    FieldGrid g;
    std::vector<Eigen::VectorXd> keep;
    for (const auto& z : cand) {
        Eigen::VectorXd x = z.head(d);
        const double t = p.transient ? z(d) : 0.0;
        if (p.in_domain && !p.in_domain(x)) continue;
        ExactValue ev = eval_exact(p, x, t);
        if (!p.phases[ev.phase].active) continue;
        const double off = p.mode == ShapeMode::RadialTheta ? x.head(2).norm() - ev.gamma : x(0) - ev.gamma;
        if (std::fabs(off) < 1e-9) continue;
        keep.push_back(z);
        g.phase.push_back(ev.phase);
    }
    g.points.resize(static_cast<Eigen::Index>(keep.size()), width);
    for (size_t i = 0; i < keep.size(); ++i) g.points.row(static_cast<Eigen::Index>(i)) = keep[i].transpose();
    return g;
}

ShapeGrid shape_grid(const ProblemSpec& p) {
    const int np = param_dim(p.mode) == 0 ? 1 : p.interface_grid[0];
    const int nt = p.transient ? p.interface_grid[1] : 1;
    ShapeGrid g;
    g.param.resize(np * nt, param_dim(p.mode));
    g.time.resize(np * nt);
    for (int it = 0; it < nt; ++it)
        for (int ip = 0; ip < np; ++ip) {
            const int r = it * np + ip;
            if (param_dim(p.mode) == 1) g.param(r, 0) = lin(p.param_range, ip, np);
            g.time(r) = p.transient ? lin({p.t_start, p.t_end}, it, nt) : 0.0;
        }
    return g;
}

FieldComparison compare_field(const FieldSolution& sol, const ProblemSpec& p, const FieldGrid& g) {
    require_exact(p);
    const int n = static_cast<int>(g.points.rows());
    const int d = p.dim;
    FieldComparison c;
    c.pred.resize(n);
    c.exact.resize(n);
    for (int ph = 0; ph < 2; ++ph) {
        std::vector<int> rows;
        for (int i = 0; i < n; ++i)
            if (g.phase[static_cast<size_t>(i)] == ph) rows.push_back(i);
        if (rows.empty()) continue;
        Eigen::MatrixXd z(static_cast<Eigen::Index>(rows.size()), g.points.cols());
        for (size_t r = 0; r < rows.size(); ++r) z.row(static_cast<Eigen::Index>(r)) = g.points.row(rows[r]);
        Eigen::VectorXd v = eval_field_values(sol, ph, z);
        for (size_t r = 0; r < rows.size(); ++r) {
            const int i = rows[r];
            c.pred(i) = v(static_cast<Eigen::Index>(r));
            Eigen::VectorXd x = g.points.row(i).head(d).transpose();
            const double t = p.transient ? g.points(i, d) : 0.0;
            c.exact(i) = p.exact_u(ph, x, t);
        }
    }
    return c;
}

FieldComparison compare_interface(const InterfaceModel& model, const ProblemSpec& p, const ShapeGrid& g) {
    require_exact(p);
    ShapeRows rows = shape_rows(model.basis, model.mode, model.transient, g.param, g.time);
    FieldComparison c;
    c.pred = rows.value * model.coeffs;
    c.exact.resize(g.time.size());
    for (int i = 0; i < g.time.size(); ++i) c.exact(i) = p.exact_gamma(g.param.row(i).transpose(), g.time(i));
    return c;
}

ErrorSummary summarize(const FieldSolution& sol, const InterfaceModel& model, const ProblemSpec& p,
                       const FieldGrid& fg, const ShapeGrid& sg) {
    FieldComparison f = compare_field(sol, p, fg);
    FieldComparison s = compare_interface(model, p, sg);
    ErrorSummary e;
    e.n_field = static_cast<int>(f.pred.size());
    e.n_interface = static_cast<int>(s.pred.size());
    e.rel_l2_field = relative_l2(f.pred, f.exact).value;
    e.rel_l2_interface = relative_l2(s.pred, s.exact).value;
    e.max_abs_field = (f.pred - f.exact).cwiseAbs().maxCoeff();
    e.max_abs_interface = (s.pred - s.exact).cwiseAbs().maxCoeff();
    return e;
}

ErrorSummary summarize(const FieldSolution& sol, const InterfaceModel& model, const ProblemSpec& p) {
    return summarize(sol, model, p, field_grid(p), shape_grid(p));
}

} // namespace stefan

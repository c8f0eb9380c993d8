#include "stefan/driver.hpp"

#include "stefan/error.hpp"
#include "stefan/kinematic.hpp"
#include "stefan/rng.hpp"
#include "stefan/sampling.hpp"

#include <chrono>
#include <cmath>
#include <limits>
#include <memory>

namespace stefan {

std::uint64_t field_seed(const SolverConfig& cfg, int phase) {
    return Rng::stream(cfg.seed, 100 + static_cast<std::uint64_t>(phase)).next();
}
std::uint64_t interface_seed(const SolverConfig& cfg) { return Rng::stream(cfg.seed, 200).next(); }
std::uint64_t sampling_seed(const SolverConfig& cfg) { return Rng::stream(cfg.seed, 300).next(); }

namespace {

void validate(const SolverConfig& c) {
    if (!(c.rho > 0 && c.rho <= 1)) throw Error(ErrorKind::InvalidArgument, "rho must lie in (0, 1]");
    if (!(c.tol > 0)) throw Error(ErrorKind::InvalidArgument, "tol must be > 0");
    if (c.max_iters < 1) throw Error(ErrorKind::InvalidArgument, "max_iters must be >= 1");
    if (c.field_features < 1 || c.interface_features < 1)
        throw Error(ErrorKind::InvalidArgument, "basis sizes must be >= 1");
    if (!(c.field_scale > 0)) throw Error(ErrorKind::InvalidArgument, "field_scale must be > 0");
    if (!(c.anchor_weight > 0)) throw Error(ErrorKind::InvalidArgument, "anchor_weight must be > 0");
}

std::vector<double> interface_scales(const ProblemSpec& p, const SolverConfig& c) {
    const int w = shape_input_dim(p.mode, p.transient);
    std::vector<double> s = c.interface_scales;
    if (s.empty()) s.push_back(1.0);
    if (static_cast<int>(s.size()) == 1 && w > 1) s.assign(static_cast<size_t>(w), s[0]);
    if (static_cast<int>(s.size()) != w)
        throw Error(ErrorKind::ConfigError, "interface_scales needs 1 or " + std::to_string(w) + " entries");
    return s;
}

double shape_rms(const ShapeRows& rows, const Eigen::VectorXd& dc) {
    return std::sqrt((rows.value * dc).squaredNorm() / static_cast<double>(rows.value.rows()));
}

} // namespace

InterfaceModel initial_interface(const ProblemSpec& p, const SolverConfig& cfg) {
    RandomFeatureBasis basis = make_basis(cfg.interface_features, interface_scales(p, cfg), interface_seed(cfg));
    const int pd = param_dim(p.mode);
    const int np = pd == 0 ? 1 : 40;
    const int nt = p.transient ? 50 : 1;
    Eigen::MatrixXd param(np * nt, pd);
    Eigen::VectorXd time(np * nt), target(np * nt);
    for (int it = 0; it < nt; ++it)
        for (int ip = 0; ip < np; ++ip) {
            const int r = it * np + ip;
            if (pd == 1) {
                const double u = (ip + 0.5) / np;
                param(r, 0) = p.param_range.first + u * (p.param_range.second - p.param_range.first);
            }
            time(r) = p.transient ? p.t_start + (p.t_end - p.t_start) * it / (nt - 1) : 0.0;
            target(r) = p.gamma0(param.row(r).transpose());
        }
    FitResult fit = fit_interface(basis, p.mode, p.transient, param, time, target, 1e-15);
    InterfaceModel model(std::move(basis), fit.coeffs, p.mode, p.transient);
    if (cfg.clamp_hi > cfg.clamp_lo) {
        const Interval& ax = p.box[0];
        const double ext = ax.second - ax.first;
        model.clamp = std::make_pair(ax.first + cfg.clamp_lo * ext, ax.first + cfg.clamp_hi * ext);
    }
    return model;
}

SolverReport solve(const ProblemSpec& p, const SolverConfig& cfg, const IterationCallback& on_iteration) {
    using clock = std::chrono::steady_clock;
    validate(cfg);
    const auto t_begin = clock::now();

    SolverReport rep;
    rep.problem = p.name;
    rep.config = cfg;

    std::array<BasisPtr, 2> bases;
    for (int i = 0; i < 2; ++i)
        if (p.phases[i].active)
            bases[i] = std::make_shared<const RandomFeatureBasis>(
                make_basis(cfg.field_features, p.space_time_dim(), cfg.field_scale, field_seed(cfg, i)));

    InterfaceModel model = initial_interface(p, cfg);
    const Anchor anchor = make_anchor(p, cfg.anchor_count, cfg.anchor_weight);
    const std::uint64_t sseed = sampling_seed(cfg);

    std::optional<FieldGrid> fgrid;
    std::optional<ShapeGrid> sgrid;
    if (p.has_exact()) {
        fgrid = field_grid(p);
        sgrid = shape_grid(p);
    }
    const ShapeGrid step_grid = shape_grid(p);
    const ShapeRows step_rows = shape_rows(model.basis, model.mode, model.transient, step_grid.param, step_grid.time);

    Eigen::VectorXd c_prev = model.coeffs;
    for (int k = 1; k <= cfg.max_iters; ++k) {
        const auto t0 = clock::now();
        IterationRecord rec;
        rec.k = k;
        try {
            CollocationSet pts = sample_collocation(p, model, cfg.counts, k, sseed, cfg.policy);
            ThermoResult th = thermo_step(p, pts, bases, cfg.penalties, cfg.rcond_field);
            FluxResidual fr = flux_residual(p, th.solution, pts.interface);
            rec.flux_residual = fr.l2_norm;
            if (!std::isfinite(fr.l2_norm)) throw Error(ErrorKind::NonFinite, "flux residual is not finite");
            rec.step_size = k == 1 ? 0.0 : shape_rms(step_rows, model.coeffs - c_prev);
            if (cfg.track_errors && fgrid) {
                FieldComparison f = compare_field(th.solution, p, *fgrid);
                rec.field_error = relative_l2(f.pred, f.exact).value;
                FieldComparison s = compare_interface(model, p, *sgrid);
                rec.geom_error = relative_l2(s.pred, s.exact).value;
            }
            rep.field = th.solution;
            rep.interface = model;
            const bool done = fr.l2_norm < cfg.tol;
            if (!done) {
                KinematicResult kin = kinematic_step(p, model, pts.interface, fr.jump, anchor, cfg.rcond_kinematic);
                c_prev = model.coeffs;
                model = model.with_coeffs(relax_update(model.coeffs, kin.coeffs, cfg.rho));
            }
            rec.wall_time = std::chrono::duration<double>(clock::now() - t0).count();
            rep.iterations.push_back(rec);
            if (on_iteration) on_iteration(rec);
            if (done) {
                rep.converged = true;
                rep.stop_reason = "flux residual below tolerance";
                break;
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::DegenerateGeometry && e.kind() != ErrorKind::RejectionFailure &&
                e.kind() != ErrorKind::NonFinite)
                throw;
            rep.stop_reason = e.what();
            break;
        }
    }
    if (rep.stop_reason.empty()) rep.stop_reason = "iteration limit reached";
    if (rep.field && rep.interface && p.has_exact()) rep.errors = summarize(*rep.field, *rep.interface, p, *fgrid, *sgrid);
    rep.contraction = estimate_contraction(rep);
    rep.total_time = std::chrono::duration<double>(clock::now() - t_begin).count();
    return rep;
}

double estimate_contraction(const std::vector<double>& errors, const std::vector<int>& ks) {
    if (errors.size() != ks.size() || errors.size() < 3)
        throw Error(ErrorKind::InsufficientData, "contraction estimate needs >= 3 points");
    const double n = static_cast<double>(errors.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < errors.size(); ++i) {
        if (!(errors[i] > 0)) throw Error(ErrorKind::InsufficientData, "non-positive error in window");
        const double x = ks[i], y = std::log(errors[i]);
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    return std::exp(slope);
}

double estimate_contraction(const SolverReport& rep, int first, int last) {
    std::vector<double> e;
    std::vector<int> ks;
    for (const auto& r : rep.iterations) {
        if (r.k < first || r.k > last) continue;
        if (!r.geom_error) throw Error(ErrorKind::InsufficientData, "geometric error not recorded");
        if (*r.geom_error <= 100 * std::numeric_limits<double>::epsilon())
            throw Error(ErrorKind::InsufficientData, "geometric error at round-off level");
        e.push_back(*r.geom_error);
        ks.push_back(r.k);
    }
    return estimate_contraction(e, ks);
}

std::optional<double> estimate_contraction(const SolverReport& rep) {
    double floor = std::numeric_limits<double>::infinity();
    for (const auto& r : rep.iterations)
        if (r.geom_error) floor = std::min(floor, *r.geom_error);
    if (!std::isfinite(floor)) return std::nullopt;
    const double cut = std::max(100.0 * floor, 100 * std::numeric_limits<double>::epsilon());
    int last = -1;
    for (const auto& r : rep.iterations)
        if (r.k >= 3 && r.geom_error && *r.geom_error > cut) last = r.k;
    if (last < 5) return std::nullopt;
    try {
        return estimate_contraction(rep, 3, last);
    } catch (const Error&) {
        return std::nullopt;
    }
}

} // namespace stefan

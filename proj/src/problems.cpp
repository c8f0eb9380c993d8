#include "stefan/problems.hpp"

#include "stefan/error.hpp"
#include "stefan/special.hpp"

#include <cmath>
#include <numbers>

namespace stefan {

namespace {

using Vec = Eigen::VectorXd;

Vec point1(double x) { return Vec::Constant(1, x); }

BoundaryFace point_face(const std::string& name, double x, BcKind kind,
                        std::function<double(int, const Vec&, double)> data) {
    BoundaryFace f;
    f.name = name;
    f.measure = 1.0;
    f.map = [x](const Vec&) { return point1(x); };
    f.kind = kind;
    f.direction = Vec::Ones(1);
    f.data = std::move(data);
    return f;
}

/// Face x = const (along y) or y = const (along x) of a rectangle.
BoundaryFace edge_face(const std::string& name, int axis, double value, const Interval& along, BcKind kind,
                       std::function<double(int, const Vec&, double)> data) {
    BoundaryFace f;
    f.name = name;
    f.measure = along.second - along.first;
    f.map = [axis, value, along](const Vec& u) {
        Vec x(2);
        x(axis) = value;
        x(1 - axis) = along.first + u(0) * (along.second - along.first);
        return x;
    };
    f.kind = kind;
    f.direction = Vec::Zero(2);
    f.direction(axis) = 1.0;
    f.data = std::move(data);
    return f;
}

std::function<double(int, const Vec&, double)> exact_data(
    std::function<double(int, const Vec&, double)> u) {
    return u;
}

SolverConfig base_config() { return SolverConfig{}; }

// one-phase 1D
ProblemSpec one_phase_1d() {
    ProblemSpec p;
    p.name = "one_phase_1d";
    p.title = "one-phase 1D Stefan problem with time-dependent Stefan coefficient";
    p.dim = 1;
    p.t_start = 0.0;
    p.t_end = 1.0;
    p.box = {{0.0, 1.5}};
    p.eval_box = p.box;
    auto u = [](int, const Vec& x, double t) { return -0.5 * x(0) * x(0) + 2.0 * x(0) - 0.5 - t; };
    p.phases[0].active = true;
    p.phases[0].k = 1.0;
    p.phases[0].initial = [u](const Vec& x) { return u(0, x, 0.0); };
    p.phases[0].flux_weight = 1.0;
    p.phases[1].active = false;
    p.stefan_coeff = [](double t) { return 3.0 - 2.0 * t; };
    p.mode = ShapeMode::ScalarTime;
    p.gamma0 = [](const Vec&) { return 2.0 - std::sqrt(3.0); };
    p.faces.push_back(point_face("x=0", 0.0, BcKind::Neumann, [](int, const Vec&, double) { return 2.0; }));
    p.exact_u = u;
    p.exact_gamma = [](const Vec&, double t) { return 2.0 - std::sqrt(3.0 - 2.0 * t); };
    p.field_grid.tensor = {100, 100};
    p.interface_grid = {1, 1000};

    SolverConfig c = base_config();
    c.field_features = 400;
    c.field_scale = 6.0;
    c.interface_features = 20;
    c.interface_scales = {3.0};
    c.counts = {2000, 400, 400, 400};
    c.rcond_field = 1e-16;
    c.rcond_kinematic = 1e-16;
    c.clamp_lo = 0.02;
    c.clamp_hi = 0.98;
    c.tol = 2e-8;
    c.max_iters = 80;
    p.defaults = c;
    return p;
}

ProblemSpec two_phase_case1() {
    ProblemSpec p;
    p.name = "two_phase_case1";
    p.title = "two-phase 1D Stefan problem, Case 1 (exponential profiles)";
    p.dim = 1;
    p.box = {{0.0, 2.0}};
    p.eval_box = p.box;
    auto u = [](int ph, const Vec& x, double t) {
        return ph == 0 ? 2.0 * std::exp((2.0 * t - 2.0 * x(0) + 1.0) / 4.0) - 2.0
                       : std::exp((2.0 * t - 2.0 * x(0) + 1.0) / 2.0) - 1.0;
    };
    for (int i = 0; i < 2; ++i) {
        p.phases[i].active = true;
        p.phases[i].initial = [u, i](const Vec& x) { return u(i, x, 0.0); };
    }
    p.phases[0].k = 2.0;
    p.phases[1].k = 1.0;
    p.phases[0].flux_weight = -2.0;
    p.phases[1].flux_weight = -1.0;
    p.stefan_coeff = [](double) { return 1.0; };
    p.gamma0 = [](const Vec&) { return 0.5; };
    p.faces.push_back(point_face("x=0", 0.0, BcKind::Dirichlet, exact_data(u)));
    p.faces.push_back(point_face("x=2", 2.0, BcKind::Dirichlet, exact_data(u)));
    p.exact_u = u;
    p.exact_gamma = [](const Vec&, double t) { return t + 0.5; };
    p.field_grid.tensor = {100, 100};

    SolverConfig c = base_config();
    c.field_features = 400;
    c.field_scale = 6.0;
    c.interface_features = 40;
    c.interface_scales = {3.0};
    c.counts = {2000, 400, 400, 400};
    c.rcond_field = 1e-16;
    c.rcond_kinematic = 1e-16;
    c.clamp_lo = 0.05;
    c.clamp_hi = 0.95;
    c.tol = 1e-9;
    c.max_iters = 80;
    p.defaults = c;
    return p;
}

ProblemSpec two_phase_case2() {
    ProblemSpec p;
    p.name = "two_phase_case2";
    p.title = "two-phase 1D Stefan problem, Case 2 (similarity solution)";
    p.dim = 1;
    p.box = {{0.0, 1.5}};
    p.eval_box = p.box;
    const double alpha = solve_similarity_constant(SimilarityCase::TwoPhaseCase2);
    p.constants["alpha"] = alpha;
    p.constants["alpha_residual"] = case2_residual(alpha);
    auto u = [alpha](int ph, const Vec& x, double t) {
        if (ph == 0) return 1.0 - std::erf(x(0) / std::sqrt(4.0 * t + 2.0)) / std::erf(alpha);
        return -1.0 + std::erfc(x(0) / (2.0 * std::sqrt(2.0 * t + 1.0))) / std::erfc(alpha / std::numbers::sqrt2);
    };
    for (int i = 0; i < 2; ++i) {
        p.phases[i].active = true;
        p.phases[i].initial = [u, i](const Vec& x) { return u(i, x, 0.0); };
        p.phases[i].flux_weight = -1.0;
    }
    p.phases[0].k = 1.0;
    p.phases[1].k = 2.0;
    p.stefan_coeff = [](double) { return 1.0; };
    p.gamma0 = [alpha](const Vec&) { return alpha * std::numbers::sqrt2; };
    p.faces.push_back(point_face("x=0", 0.0, BcKind::Dirichlet, exact_data(u)));
    p.faces.push_back(point_face("x=1.5", 1.5, BcKind::Dirichlet, exact_data(u)));
    p.exact_u = u;
    p.exact_gamma = [alpha](const Vec&, double t) { return alpha * std::sqrt(4.0 * t + 2.0); };
    p.field_grid.tensor = {100, 100};

    SolverConfig c = base_config();
    c.field_features = 400;
    c.field_scale = 8.0;
    c.interface_features = 30;
    c.interface_scales = {10.0};
    c.counts = {2000, 400, 400, 400};
    c.rcond_field = 1e-16;
    c.rcond_kinematic = 1e-16;
    // keeps the cold phase nonempty when an unrelaxed step overshoots x = 1.5
    c.clamp_lo = 0.02;
    c.clamp_hi = 0.95;
    c.tol = 1e-9;
    c.max_iters = 80;
    p.defaults = c;
    return p;
}

ProblemSpec two_phase_2d() {
    ProblemSpec p;
    p.name = "two_phase_2d";
    p.title = "two-phase 2D Stefan problem with a planar graph interface";
    p.dim = 2;
    p.box = {{0.0, 2.0}, {0.0, 1.0}};
    p.eval_box = p.box;
    auto u = [](int ph, const Vec& x, double t) {
        return ph == 0 ? 2.0 * std::exp((2.0 * t - 2.0 * x(0) + 1.0) / 4.0) - 2.0
                       : std::exp((2.0 * t - 2.0 * x(0) + 1.0) / 2.0) - 1.0;
    };
    for (int i = 0; i < 2; ++i) {
        p.phases[i].active = true;
        p.phases[i].initial = [u, i](const Vec& x) { return u(i, x, 0.0); };
    }
    p.phases[0].k = 2.0;
    p.phases[1].k = 1.0;
    p.phases[0].flux_weight = -2.0;
    p.phases[1].flux_weight = -1.0;
    p.stefan_coeff = [](double) { return 1.0; };
    p.mode = ShapeMode::GraphY;
    p.param_range = {0.0, 1.0};
    p.gamma0 = [](const Vec&) { return 0.5; };
    auto zero = [](int, const Vec&, double) { return 0.0; };
    p.faces.push_back(edge_face("x=0", 0, 0.0, {0.0, 1.0}, BcKind::Dirichlet, exact_data(u)));
    p.faces.push_back(edge_face("x=2", 0, 2.0, {0.0, 1.0}, BcKind::Dirichlet, exact_data(u)));
    p.faces.push_back(edge_face("y=0", 1, 0.0, {0.0, 2.0}, BcKind::Neumann, zero));
    p.faces.push_back(edge_face("y=1", 1, 1.0, {0.0, 2.0}, BcKind::Neumann, zero));
    p.exact_u = u;
    p.exact_gamma = [](const Vec&, double t) { return t + 0.5; };
    p.field_grid.tensor = {50, 50, 20};
    p.interface_grid = {50, 20};

    SolverConfig c = base_config();
    c.field_features = 600;
    c.field_scale = 3.0;
    c.interface_features = 40;
    c.interface_scales = {0.0, 2.0};
    c.counts = {3000, 750, 1000, 1000};
    c.rcond_field = 1e-16;
    c.rcond_kinematic = 1e-12;
    c.clamp_lo = 0.02;
    c.clamp_hi = 0.98;
    c.tol = 1e-8;
    c.max_iters = 60;
    p.defaults = c;
    return p;
}

ProblemSpec frank(int space_dim) {
    const bool three = space_dim == 3;
    ProblemSpec p;
    p.name = three ? "frank_3d" : "frank_2d";
    p.title = three ? "Frank sphere, 3D (reduced radial coordinate)"
                    : "Frank sphere, 2D (reduced radial coordinate)";
    const double lambda = three ? 0.6 : 0.5;
    const double u_m = 0.0, u_inf = -1.0;
    const double latent = three ? frank3d_latent_heat(lambda, u_m, u_inf) : frank2d_latent_heat(lambda, u_m, u_inf);
    p.constants["lambda"] = lambda;
    p.constants["latent_heat"] = latent;
    p.dim = 1;
    p.t_start = 1.0;
    p.t_end = 3.0;
    auto radius = [lambda](double t) { return 2.0 * lambda * std::sqrt(t); };
    const double r_trunc = 4.0 * radius(p.t_end);
    p.constants["r_trunc"] = r_trunc;
    p.box = {{0.5 * radius(p.t_start), r_trunc}};
    p.eval_box = p.box;
    std::function<double(int, const Vec&, double)> u;
    if (three) {
        const double amp = (u_m - u_inf) / frank3d_profile(lambda);
        u = [amp, u_inf](int, const Vec& x, double t) { return u_inf + amp * frank3d_profile(x(0) / (2.0 * std::sqrt(t))); };
    } else {
        const double e1l = exp_integral_e1(lambda * lambda);
        u = [e1l, u_m, u_inf](int, const Vec& x, double t) {
            return u_inf + (u_m - u_inf) * exp_integral_e1(x(0) * x(0) / (4.0 * t)) / e1l;
        };
    }
    p.phases[0].active = false;
    p.phases[1].active = true;
    p.phases[1].k = 1.0;
    p.phases[1].radial_order = three ? 2 : 1;
    p.phases[1].initial = [u, p](const Vec& x) { return u(1, x, p.t_start); };
    p.phases[1].flux_weight = 1.0;
    p.stefan_coeff = [latent](double) { return latent; };
    p.mode = ShapeMode::RadialSym;
    p.melt_value = u_m;
    p.gamma0 = [radius, p](const Vec&) { return radius(p.t_start); };
    p.faces.push_back(point_face("r=R_trunc", r_trunc, BcKind::Dirichlet, u));
    p.exact_u = u;
    p.exact_gamma = [radius](const Vec&, double t) { return radius(t); };
    if (three) {
        p.field_grid.tensor = {};
        p.field_grid.random_points = 2000;
    } else {
        p.field_grid.tensor = {100, 100};
    }

    SolverConfig c = base_config();
    c.field_features = 800;
    c.field_scale = 4.0;
    c.interface_features = 20;
    c.interface_scales = {2.0};
    c.counts = {4000, 400, 400, 400};
    c.rcond_field = 1e-16;
    c.rcond_kinematic = 1e-16;
    c.tol = three ? 3e-8 : 1e-8; // flux residual floors near 1e-8 and 3e-9
    c.max_iters = 80;
    p.defaults = c;
    return p;
}

ProblemSpec mullins_sekerka_problem(double gamma, double r_out, double u_inf) {
    ProblemSpec p;
    p.name = "mullins_sekerka";
    p.title = "quasi-stationary Mullins-Sekerka problem with Gibbs-Thomson interface condition";
    p.dim = 2;
    p.transient = false;
    p.t_start = 0.0;
    p.t_end = 0.0;
    p.box = {{-r_out, r_out}, {-r_out, r_out}};
    p.eval_box = p.box;
    p.in_domain = [r_out](const Vec& x) { return x.head(2).norm() <= r_out; };
    p.phases[0].active = false;
    p.phases[1].active = true;
    p.phases[1].k = 1.0;
    p.phases[1].flux_weight = 1.0;
    p.stefan_coeff = [](double) { return 1.0; };
    p.mode = ShapeMode::RadialTheta;
    p.param_range = {0.0, 2.0 * std::numbers::pi};
    p.condition = InterfaceCondition::GibbsThomson;
    p.surface_tension = gamma;
    BoundaryFace f;
    f.name = "r=R_out";
    f.measure = 2.0 * std::numbers::pi * r_out;
    f.map = [r_out](const Vec& u) {
        const double th = 2.0 * std::numbers::pi * u(0);
        return Vec(Eigen::Vector2d(r_out * std::cos(th), r_out * std::sin(th)));
    };
    f.kind = BcKind::Dirichlet;
    f.direction = Vec::Zero(2);
    f.data = [u_inf](int, const Vec&, double) { return u_inf; };
    p.faces.push_back(f);
    return p;
}

} // namespace

ProblemSpec thermal_resistance_problem(double r_th, double v) {
    ProblemSpec p;
    p.name = "thermal_resistance";
    p.title = "two-phase 2D Stefan problem with interfacial thermal resistance";
    p.dim = 2;
    // interface x = sqrt(2) V t - y stays inside this box for (y, t) in [0,1]^2
    p.box = {{-1.25, 1.65}, {0.0, 1.0}};
    p.eval_box = {{0.0, 1.0}, {0.0, 1.0}};
    const double t_inf = r_th * v - 1.0; // L (R_th V - 1/c_p) with L = c_p = 1
    p.constants["resistance"] = r_th;
    p.constants["wave_speed"] = v;
    p.constants["t_inf"] = t_inf;
    auto u = [v, t_inf](int ph, const Vec& x, double t) {
        if (ph == 0) return 0.0;
        const double xi = (x(0) + x(1)) / std::numbers::sqrt2 - v * t;
        return t_inf + std::exp(-v * xi);
    };
    for (int i = 0; i < 2; ++i) {
        p.phases[i].active = true;
        p.phases[i].k = 1.0;
        p.phases[i].capacity = 1.0;
        p.phases[i].initial = [u, i](const Vec& x) { return u(i, x, 0.0); };
        p.phases[i].flux_weight = 1.0;
    }
    p.stefan_coeff = [](double) { return 1.0; };
    p.mode = ShapeMode::GraphY;
    p.param_range = {0.0, 1.0};
    p.gamma0 = [](const Vec& y) { return -y(0); };
    p.condition = InterfaceCondition::ThermalResistance;
    p.resistance = r_th;
    const Interval xs = p.box[0];
    p.faces.push_back(edge_face("x=lo", 0, xs.first, {0.0, 1.0}, BcKind::Dirichlet, exact_data(u)));
    p.faces.push_back(edge_face("x=hi", 0, xs.second, {0.0, 1.0}, BcKind::Dirichlet, exact_data(u)));
    p.faces.push_back(edge_face("y=0", 1, 0.0, xs, BcKind::Dirichlet, exact_data(u)));
    p.faces.push_back(edge_face("y=1", 1, 1.0, xs, BcKind::Dirichlet, exact_data(u)));
    p.exact_u = u;
    p.exact_gamma = [v](const Vec& y, double t) { return std::numbers::sqrt2 * v * t - y(0); };
    p.field_grid.tensor = {50, 50, 20};
    p.interface_grid = {50, 20};

    SolverConfig c = base_config();
    c.field_features = 600;
    c.field_scale = 2.0;
    c.interface_features = 40;
    c.interface_scales = {0.3, 1.0};
    c.counts = {3000, 750, 1000, 1000};
    c.rcond_field = 1e-16;
    c.rcond_kinematic = 1e-10;
    c.clamp_lo = 0.02;
    c.clamp_hi = 0.98;
    c.tol = 1e-8;
    c.max_iters = 80;
    p.defaults = c;
    return p;
}

int exact_phase(const ProblemSpec& p, const Eigen::VectorXd& x, double t) {
    if (!p.exact_gamma) throw Error(ErrorKind::NoExactSolution, p.name + " has no exact interface");
    const Vec param = param_of_point(p.mode, x);
    const double g = p.exact_gamma(param, t);
    const double off = p.mode == ShapeMode::RadialTheta ? x.head(2).norm() - g : x(0) - g;
    return off < 0 ? 0 : 1;
}

ExactValue eval_exact(const ProblemSpec& p, const Eigen::VectorXd& x, double t) {
    if (!p.has_exact()) throw Error(ErrorKind::NoExactSolution, p.name + " has no exact solution");
    ExactValue v;
    v.gamma = p.exact_gamma(param_of_point(p.mode, x), t);
    v.phase = exact_phase(p, x, t);
    v.u = p.exact_u(v.phase, x, t);
    return v;
}

std::vector<ProblemSpec> catalog() {
    return {one_phase_1d(),    two_phase_case1(), two_phase_case2(),
            two_phase_2d(),    thermal_resistance_problem(0.5), frank(2),
            frank(3),          mullins_sekerka_problem(0.5, 4.0, 1.0)};
}

std::vector<std::string> catalog_names() {
    std::vector<std::string> out;
    for (const auto& p : catalog()) out.push_back(p.name);
    return out;
}

ProblemSpec find_problem(const std::string& name) {
    for (auto& p : catalog())
        if (p.name == name) return p;
    std::string list;
    for (const auto& n : catalog_names()) list += (list.empty() ? "" : ", ") + n;
    throw Error(ErrorKind::InvalidArgument, "unknown benchmark '" + name + "'; valid names: " + list);
}

ProblemSpec mullins_sekerka_spec(double gamma, double r_out, double u_inf) {
    return mullins_sekerka_problem(gamma, r_out, u_inf);
}

} // namespace stefan

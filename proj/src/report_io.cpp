#include "stefan/report_io.hpp"

#include "stefan/error.hpp"
#include "stefan/metrics.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace stefan {

using nlohmann::json;

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

json config_to_json(const SolverConfig& c) {
    return json{
        {"rho", c.rho},
        {"tol", c.tol},
        {"max_iters", c.max_iters},
        {"seed", c.seed},
        {"policy", to_string(c.policy)},
        {"counts", {{"interior", c.counts.interior}, {"initial", c.counts.initial},
                    {"boundary", c.counts.boundary}, {"interface", c.counts.interface}}},
        {"field_features", c.field_features},
        {"field_scale", c.field_scale},
        {"interface_features", c.interface_features},
        {"interface_scales", c.interface_scales},
        {"rcond_field", c.rcond_field},
        {"rcond_kinematic", c.rcond_kinematic},
        {"penalties", {{"pde", c.penalties.pde}, {"initial", c.penalties.initial},
                       {"boundary", c.penalties.boundary}, {"interface", c.penalties.interface}}},
        {"anchor_weight", c.anchor_weight},
        {"anchor_count", c.anchor_count},
        {"clamp", {c.clamp_lo, c.clamp_hi}},
        {"track_errors", c.track_errors},
    };
}

namespace {

template <class T>
void take(const json& j, const char* key, T& out) {
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ConfigError, std::string("bad value for '") + key + "': " + e.what());
    }
}

void reject_unknown(const json& j, std::initializer_list<const char*> keys, const std::string& where) {
    for (auto it = j.begin(); it != j.end(); ++it) {
        bool ok = false;
        for (const char* k : keys) ok = ok || it.key() == k;
        if (!ok) throw Error(ErrorKind::ConfigError, "unknown key '" + it.key() + "' in " + where);
    }
}

} // namespace

void apply_config_json(const json& j, SolverConfig& c) {
    if (!j.is_object()) throw Error(ErrorKind::ConfigError, "solver section must be an object");
    reject_unknown(j, {"rho", "tol", "max_iters", "seed", "policy", "counts", "field_features", "field_scale",
                       "interface_features", "interface_scales", "rcond_field", "rcond_kinematic", "penalties",
                       "anchor_weight", "anchor_count", "clamp", "track_errors"},
                   "solver");
    take(j, "rho", c.rho);
    take(j, "tol", c.tol);
    take(j, "max_iters", c.max_iters);
    take(j, "seed", c.seed);
    if (j.contains("policy")) {
        std::string s;
        take(j, "policy", s);
        c.policy = seed_policy_from_string(s);
    }
    if (j.contains("counts")) {
        const json& n = j.at("counts");
        reject_unknown(n, {"interior", "initial", "boundary", "interface"}, "solver.counts");
        take(n, "interior", c.counts.interior);
        take(n, "initial", c.counts.initial);
        take(n, "boundary", c.counts.boundary);
        take(n, "interface", c.counts.interface);
    }
    take(j, "field_features", c.field_features);
    take(j, "field_scale", c.field_scale);
    take(j, "interface_features", c.interface_features);
    take(j, "interface_scales", c.interface_scales);
    take(j, "rcond_field", c.rcond_field);
    take(j, "rcond_kinematic", c.rcond_kinematic);
    if (j.contains("penalties")) {
        const json& n = j.at("penalties");
        reject_unknown(n, {"pde", "initial", "boundary", "interface"}, "solver.penalties");
        take(n, "pde", c.penalties.pde);
        take(n, "initial", c.penalties.initial);
        take(n, "boundary", c.penalties.boundary);
        take(n, "interface", c.penalties.interface);
    }
    take(j, "anchor_weight", c.anchor_weight);
    take(j, "anchor_count", c.anchor_count);
    if (j.contains("clamp")) {
        std::vector<double> v;
        take(j, "clamp", v);
        if (v.size() != 2) throw Error(ErrorKind::ConfigError, "clamp needs two numbers");
        c.clamp_lo = v[0];
        c.clamp_hi = v[1];
    }
    take(j, "track_errors", c.track_errors);
}

json report_to_json(const ProblemSpec& p, const SolverReport& r, bool timing) {
    json j;
    j["benchmark"] = p.name;
    j["title"] = p.title;
    j["config"] = config_to_json(r.config);
    j["derived_seeds"] = {{"field_phase1", field_seed(r.config, 0)},
                          {"field_phase2", field_seed(r.config, 1)},
                          {"interface", interface_seed(r.config)},
                          {"sampling", sampling_seed(r.config)}};
    json consts = json::object();
    for (const auto& [k, v] : p.constants) consts[k] = v;
    j["constants"] = consts;
    j["converged"] = r.converged;
    j["stop_reason"] = r.stop_reason;
    j["iterations"] = r.iterations.size();
    if (!r.iterations.empty()) j["final_flux_residual"] = r.iterations.back().flux_residual;
    j["contraction_factor"] = r.contraction ? json(*r.contraction) : json(nullptr);
    if (r.errors) {
        j["errors"] = {{"rel_l2_field", r.errors->rel_l2_field},
                       {"rel_l2_interface", r.errors->rel_l2_interface},
                       {"max_abs_field", r.errors->max_abs_field},
                       {"max_abs_interface", r.errors->max_abs_interface},
                       {"n_field", r.errors->n_field},
                       {"n_interface", r.errors->n_interface}};
    } else {
        j["errors"] = nullptr;
    }
    j["wall_time_s"] = timing ? r.total_time : 0.0;
    return j;
}

void write_text(const std::filesystem::path& path, const std::string& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error(ErrorKind::IoError, "cannot open " + path.string() + " for writing");
    f << body;
    if (!f) throw Error(ErrorKind::IoError, "write failed for " + path.string());
}

void write_history_csv(const std::filesystem::path& path, const SolverReport& r, bool timing) {
    std::ostringstream s;
    s << "k,flux_residual,geom_error,field_error,wall_time_s\n";
    for (const auto& it : r.iterations) {
        s << it.k << ',' << format_double(it.flux_residual) << ','
          << (it.geom_error ? format_double(*it.geom_error) : "") << ','
          << (it.field_error ? format_double(*it.field_error) : "") << ','
          << format_double(timing ? it.wall_time : 0.0) << '\n';
    }
    write_text(path, s.str());
}

void write_field_grid_csv(const std::filesystem::path& path, const ProblemSpec& p, const SolverReport& r) {
    if (!r.field) throw Error(ErrorKind::InvalidArgument, "report has no field solution");
    FieldGrid g = field_grid(p);
    FieldComparison c = compare_field(*r.field, p, g);
    std::ostringstream s;
    s << (p.dim == 2 ? "x,y," : "x,") << (p.transient ? "t," : "") << "u_pred,u_exact,abs_err\n";
    for (Eigen::Index i = 0; i < g.points.rows(); ++i) {
        for (Eigen::Index a = 0; a < g.points.cols(); ++a) s << format_double(g.points(i, a)) << ',';
        s << format_double(c.pred(i)) << ',' << format_double(c.exact(i)) << ','
          << format_double(std::abs(c.pred(i) - c.exact(i))) << '\n';
    }
    write_text(path, s.str());
}

void write_interface_grid_csv(const std::filesystem::path& path, const ProblemSpec& p, const SolverReport& r) {
    if (!r.interface) throw Error(ErrorKind::InvalidArgument, "report has no interface");
    ShapeGrid g = shape_grid(p);
    FieldComparison c = compare_interface(*r.interface, p, g);
    std::ostringstream s;
    const bool has_param = param_dim(p.mode) == 1;
    s << (has_param ? (p.mode == ShapeMode::RadialTheta ? "theta," : "y,") : "") << "t,gamma_pred,gamma_exact,abs_err\n";
    for (Eigen::Index i = 0; i < g.time.size(); ++i) {
        if (has_param) s << format_double(g.param(i, 0)) << ',';
        s << format_double(g.time(i)) << ',' << format_double(c.pred(i)) << ',' << format_double(c.exact(i)) << ','
          << format_double(std::abs(c.pred(i) - c.exact(i))) << '\n';
    }
    write_text(path, s.str());
}

} // namespace stefan

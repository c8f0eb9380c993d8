// Command-line front end: run benchmarks, rho sweeps and the summary table.

#include "stefan/driver.hpp"
#include "stefan/error.hpp"
#include "stefan/problems.hpp"
#include "stefan/report_io.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <set>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace stefan;

namespace {

constexpr const char* kOutEnv = "STEFAN_OUT_DIR";

struct Flags {
    std::string benchmark;
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<double> rho;
    std::vector<double> rho_sweep;
    std::string out;
    std::optional<double> tol;
    std::optional<int> max_iters;
    bool no_timing = false;
    bool quiet = false;
};

fs::path output_root(const Flags& f, const json& cfg) {
    if (!f.out.empty()) return f.out;
    if (cfg.contains("output") && cfg["output"].contains("dir")) return cfg["output"]["dir"].get<std::string>();
    if (const char* env = std::getenv(kOutEnv); env && *env) return env;
    return "out";
}

json load_config(const std::string& path) {
    if (path.empty()) return json::object();
    std::ifstream in(path);
    if (!in) throw Error(ErrorKind::ConfigError, "cannot read config file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::ConfigError, "config parse error in " + path + ": " + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::ConfigError, "config root must be an object");
    for (auto it = j.begin(); it != j.end(); ++it) {
        const std::string& k = it.key();
        if (k != "benchmark" && k != "solver" && k != "rho_sweep" && k != "problem" && k != "mullins_sekerka" &&
            k != "output")
            throw Error(ErrorKind::ConfigError, "unknown top-level key '" + k + "'");
    }
    return j;
}

ProblemSpec build_problem(const std::string& name, const json& cfg) {
    json prob = cfg.value("problem", json::object());
    if (name == "thermal_resistance") {
        for (auto it = prob.begin(); it != prob.end(); ++it)
            if (it.key() != "resistance" && it.key() != "wave_speed")
                throw Error(ErrorKind::ConfigError, "unknown key '" + it.key() + "' in problem");
        return thermal_resistance_problem(prob.value("resistance", 0.5), prob.value("wave_speed", 1.0));
    }
    if (!prob.empty()) throw Error(ErrorKind::ConfigError, "benchmark " + name + " takes no problem options");
    return find_problem(name);
}

SolverConfig build_config(const ProblemSpec& p, const json& cfg, const Flags& f) {
    SolverConfig c = p.defaults;
    if (cfg.contains("solver")) apply_config_json(cfg["solver"], c);
    if (f.seed) c.seed = *f.seed;
    if (f.rho) c.rho = *f.rho;
    if (f.tol) c.tol = *f.tol;
    if (f.max_iters) c.max_iters = *f.max_iters;
    return c;
}

void log_path(const fs::path& p) { std::cerr << "wrote " << p.string() << '\n'; }

int run_one(const ProblemSpec& p, const SolverConfig& c, const fs::path& dir, const Flags& f) {
    fs::create_directories(dir);
    SolverReport r = solve(p, c, [&](const IterationRecord& it) {
        if (f.quiet) return;
        std::fprintf(stderr, "[%s] k=%3d flux=%.3e", p.name.c_str(), it.k, it.flux_residual);
        if (it.geom_error) std::fprintf(stderr, " geom=%.3e", *it.geom_error);
        if (it.field_error) std::fprintf(stderr, " field=%.3e", *it.field_error);
        std::fprintf(stderr, "\n");
    });
    const bool timing = !f.no_timing;
    write_text(dir / "report.json", report_to_json(p, r, timing).dump(2) + "\n");
    log_path(dir / "report.json");
    write_history_csv(dir / "history.csv", r, timing);
    log_path(dir / "history.csv");
    if (p.has_exact() && r.field) {
        write_field_grid_csv(dir / "field_grid.csv", p, r);
        log_path(dir / "field_grid.csv");
        write_interface_grid_csv(dir / "interface_grid.csv", p, r);
        log_path(dir / "interface_grid.csv");
    }
    std::cout << p.name << ": " << (r.converged ? "converged" : "not converged") << " after "
              << r.iterations.size() << " iterations (" << r.stop_reason << ")";
    if (r.errors)
        std::cout << ", rel L2 field " << format_double(r.errors->rel_l2_field) << ", interface "
                  << format_double(r.errors->rel_l2_interface);
    std::cout << '\n';
    return r.converged ? 0 : 2;
}

int run_mullins_sekerka(const json& cfg, const fs::path& dir, const Flags& f) {
    json ms = cfg.value("mullins_sekerka", json::object());
    static const std::set<std::string> known = {
        "gammas", "delta0", "wave", "r0", "r_out", "u_inf", "dt", "steps", "field_features", "field_scale",
        "interior", "boundary", "interface_points", "interface_features", "interface_scale", "seed"};
    for (auto it = ms.begin(); it != ms.end(); ++it)
        if (!known.count(it.key()))
            throw Error(ErrorKind::ConfigError, "unknown key '" + it.key() + "' in mullins_sekerka");
    MullinsSekerkaOptions base;
    std::vector<double> gammas = ms.value("gammas", std::vector<double>{0.1, 0.25, 0.5});
    base.delta0 = ms.value("delta0", base.delta0);
    base.wave = ms.value("wave", base.wave);
    base.r0 = ms.value("r0", base.r0);
    base.r_out = ms.value("r_out", base.r_out);
    base.u_inf = ms.value("u_inf", base.u_inf);
    base.dt = ms.value("dt", base.dt);
    base.steps = ms.value("steps", base.steps);
    base.field_features = ms.value("field_features", base.field_features);
    base.field_scale = ms.value("field_scale", base.field_scale);
    base.interior = ms.value("interior", base.interior);
    base.boundary = ms.value("boundary", base.boundary);
    base.interface_points = ms.value("interface_points", base.interface_points);
    base.interface_features = ms.value("interface_features", base.interface_features);
    base.interface_scale = ms.value("interface_scale", base.interface_scale);
    base.seed = ms.value("seed", base.seed);
    if (f.seed) base.seed = *f.seed;
    fs::create_directories(dir);
    std::ostringstream csv;
    csv << "gamma,step,t,amplitude,deviation,mean_radius\n";
    json rep;
    rep["benchmark"] = "mullins_sekerka";
    rep["options"] = {{"delta0", base.delta0}, {"wave", base.wave}, {"r0", base.r0}, {"r_out", base.r_out},
                      {"u_inf", base.u_inf}, {"dt", base.dt}, {"steps", base.steps}, {"seed", base.seed},
                      {"field_features", base.field_features}, {"field_scale", base.field_scale},
                      {"interior", base.interior}, {"boundary", base.boundary},
                      {"interface_points", base.interface_points},
                      {"interface_features", base.interface_features}, {"interface_scale", base.interface_scale},
                      {"gammas", gammas}};
    json finals = json::array();
    for (double g : gammas) {
        MullinsSekerkaOptions o = base;
        o.gamma = g;
        MullinsSekerkaHistory h = mullins_sekerka_evolve(o);
        for (size_t i = 0; i < h.time.size(); ++i)
            csv << format_double(g) << ',' << i << ',' << format_double(h.time[i]) << ','
                << format_double(h.amplitude[i]) << ',' << format_double(h.deviation[i]) << ','
                << format_double(h.mean_radius[i]) << '\n';
        finals.push_back({{"gamma", g}, {"final_amplitude", h.amplitude.back()},
                          {"final_deviation", h.deviation.back()}, {"final_mean_radius", h.mean_radius.back()}});
        if (!f.quiet)
            std::fprintf(stderr, "[mullins_sekerka] gamma=%g final amplitude %.6e\n", g, h.amplitude.back());
    }
    rep["final"] = finals;
    write_text(dir / "report.json", rep.dump(2) + "\n");
    log_path(dir / "report.json");
    write_text(dir / "amplitude_history.csv", csv.str());
    log_path(dir / "amplitude_history.csv");
    return 0;
}

std::string rho_tag(double rho) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "rho_%g", rho);
    return buf;
}

int cmd_run(const Flags& f) {
    json cfg = load_config(f.config);
    std::string name = f.benchmark;
    if (name.empty() && cfg.contains("benchmark")) name = cfg["benchmark"].get<std::string>();
    if (name.empty()) throw Error(ErrorKind::ConfigError, "no benchmark given (use --benchmark or the config)");
    const fs::path root = output_root(f, cfg) / name;
    if (name == "mullins_sekerka") return run_mullins_sekerka(cfg, root, f);

    ProblemSpec p = build_problem(name, cfg);
    std::vector<double> sweep = f.rho_sweep;
    if (sweep.empty() && cfg.contains("rho_sweep")) sweep = cfg["rho_sweep"].get<std::vector<double>>();
    if (sweep.empty()) return run_one(p, build_config(p, cfg, f), root, f);

    int worst = 0;
    for (double rho : sweep) {
        Flags g = f;
        g.rho = rho;
        const int code = run_one(p, build_config(p, cfg, g), root / rho_tag(rho), g);
        worst = std::max(worst, code);
    }
    return worst;
}

int cmd_table1(const Flags& f) {
    json cfg = load_config(f.config);
    const fs::path root = output_root(f, cfg) / "table1";
    fs::create_directories(root);
    std::ostringstream csv, txt;
    csv << "benchmark,rel_l2_u,rel_l2_s,converged,iterations\n";
    char line[256];
    std::snprintf(line, sizeof line, "%-18s %14s %14s\n", "benchmark", "rel_l2_u", "rel_l2_s");
    txt << line;
    int worst = 0;
    for (const char* name : {"one_phase_1d", "two_phase_case1", "two_phase_case2", "two_phase_2d"}) {
        ProblemSpec p = find_problem(name);
        SolverConfig c = build_config(p, json::object(), f);
        const int code = run_one(p, c, root / name, f);
        worst = std::max(worst, code);
        std::ifstream in(root / name / "report.json");
        json rep;
        in >> rep;
        const double eu = rep["errors"]["rel_l2_field"].get<double>();
        const double es = rep["errors"]["rel_l2_interface"].get<double>();
        csv << name << ',' << format_double(eu) << ',' << format_double(es) << ','
            << (rep["converged"].get<bool>() ? "true" : "false") << ',' << rep["iterations"].get<int>() << '\n';
        std::snprintf(line, sizeof line, "%-18s %14.3e %14.3e\n", name, eu, es);
        txt << line;
    }
    write_text(root / "table1.csv", csv.str());
    log_path(root / "table1.csv");
    write_text(root / "table1.txt", txt.str());
    log_path(root / "table1.txt");
    std::cout << txt.str();
    return worst;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Operator-splitting random-feature solver for Stefan problems"};
    app.require_subcommand(1);
    Flags f;

    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--config", f.config, "JSON config file");
        sub->add_option("--seed", f.seed, "run seed");
        sub->add_option("--out", f.out, std::string("output directory (default $") + kOutEnv + " or ./out)");
        sub->add_option("--tol", f.tol, "flux residual tolerance");
        sub->add_option("--max-iters", f.max_iters, "iteration limit");
        sub->add_option("--rho", f.rho, "relaxation parameter in (0, 1]");
        sub->add_flag("--no-timing", f.no_timing, "write wall-clock fields as 0 (byte-stable outputs)");
        sub->add_flag("--quiet", f.quiet, "suppress per-iteration progress");
    };

    CLI::App* run = app.add_subcommand("run", "run one benchmark (or a rho sweep)");
    run->add_option("--benchmark", f.benchmark, "benchmark name (see list)");
    run->add_option("--rho-sweep", f.rho_sweep, "comma separated rho values")->delimiter(',');
    add_common(run);

    CLI::App* table = app.add_subcommand("table1", "run the four 1D/2D benchmarks and write a summary table");
    add_common(table);

    CLI::App* list = app.add_subcommand("list", "list benchmarks");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*list) {
            for (const auto& p : catalog()) std::cout << p.name << "  " << p.title << '\n';
            return 0;
        }
        if (*run) return cmd_run(f);
        if (*table) return cmd_table1(f);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}

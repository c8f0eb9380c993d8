#pragma once

#include "stefan/config.hpp"
#include "stefan/geometry.hpp"

#include <Eigen/Dense>

#include <array>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace stefan {

enum class BcKind { Dirichlet, Neumann };
enum class InterfaceCondition { Continuity, ThermalResistance, GibbsThomson };

using Interval = std::pair<double, double>;
using SpaceFn = std::function<double(const Eigen::VectorXd& x)>;
using SpaceTimeFn = std::function<double(const Eigen::VectorXd& x, double t)>;

struct BoundaryFace {
    std::string name;
    double measure = 1.0;
    /// Maps a point of the unit cube [0,1]^(d-1) onto the face.
    std::function<Eigen::VectorXd(const Eigen::VectorXd& u)> map;
    BcKind kind = BcKind::Dirichlet;
    /// Direction of the Neumann derivative.
    Eigen::VectorXd direction;
    /// Boundary data for the phase that owns the point.
    std::function<double(int phase, const Eigen::VectorXd& x, double t)> data;
};

struct PhaseSpec {
    bool active = true;
    double k = 1.0;
    double capacity = 1.0; // multiplies u_t
    /// m in u_rr + (m/r) u_r when the field lives in a reduced radial coordinate.
    int radial_order = 0;
    SpaceTimeFn source; // empty means zero
    SpaceFn initial;
    /// a_i in  beta V_n = (a_1 grad u_1 - a_2 grad u_2) . n
    double flux_weight = 1.0;
};

struct GridSpec {
    std::vector<int> tensor; // per space-time axis; empty means random
    int random_points = 0;
    std::uint64_t seed = 12345;
};

struct ProblemSpec {
    std::string name;
    std::string title;
    int dim = 1;
    bool transient = true;
    double t_start = 0.0;
    double t_end = 1.0;
    std::vector<Interval> box;      // collocation bounding box (spatial)
    std::vector<Interval> eval_box; // error evaluation box (spatial)
    std::function<bool(const Eigen::VectorXd& x)> in_domain; // empty means whole box
    std::array<PhaseSpec, 2> phases;
    std::function<double(double t)> stefan_coeff;

    ShapeMode mode = ShapeMode::ScalarTime;
    Interval param_range{0.0, 0.0};
    std::function<double(const Eigen::VectorXd& param)> gamma0;

    InterfaceCondition condition = InterfaceCondition::Continuity;
    double melt_value = 0.0;
    double resistance = 0.0;      // R_th
    double surface_tension = 0.0; // gamma in u = -gamma kappa

    std::vector<BoundaryFace> faces;

    std::function<double(int phase, const Eigen::VectorXd& x, double t)> exact_u;
    std::function<double(const Eigen::VectorXd& param, double t)> exact_gamma;

    GridSpec field_grid;
    std::array<int, 2> interface_grid{1, 1000}; // (param, time) counts

    SolverConfig defaults;
    std::map<std::string, double> constants;

    bool has_exact() const { return static_cast<bool>(exact_u) && static_cast<bool>(exact_gamma); }
    int space_time_dim() const { return dim + (transient ? 1 : 0); }
};

/// Phase (0 or 1) of a point under the exact interface.
int exact_phase(const ProblemSpec& p, const Eigen::VectorXd& x, double t);

struct ExactValue {
    double u = 0.0;
    double gamma = 0.0;
    int phase = 0;
};

/// Exact field (phase resolved by the exact interface) and exact interface
/// position at the shape parameter of x.
ExactValue eval_exact(const ProblemSpec& p, const Eigen::VectorXd& x, double t);

std::vector<ProblemSpec> catalog();
std::vector<std::string> catalog_names();
ProblemSpec find_problem(const std::string& name);

/// Extra knobs for the thermal resistance and Mullins-Sekerka builders.
ProblemSpec thermal_resistance_problem(double r_th, double wave_speed = 1.0);

/// Stationary problem on the annulus between the interface and r = r_out.
ProblemSpec mullins_sekerka_spec(double gamma, double r_out, double u_inf);

struct MullinsSekerkaOptions {
    double gamma = 0.5;
    double delta0 = 0.15;
    int wave = 5;
    double r0 = 1.0;
    double r_out = 4.0;
    double u_inf = 1.0;
    double dt = 1e-3;
    int steps = 40;
    // ln r is singular at the origin, one unit inside the interface; low
    // bandwidth features cannot resolve it
    int field_features = 2000;
    double field_scale = 12.0;
    int interior = 5000;
    int boundary = 400;
    int interface_points = 400;
    int interface_features = 40;
    double interface_scale = 3.0;
    double rcond = 1e-15;
    std::uint64_t seed = 1;
};

struct MullinsSekerkaHistory {
    std::vector<double> time;
    std::vector<double> amplitude; // Fourier-k cosine amplitude of G(theta)
    std::vector<double> deviation; // max |G - mean G|
    std::vector<double> mean_radius;
};

MullinsSekerkaHistory mullins_sekerka_evolve(const MullinsSekerkaOptions& opt);

} // namespace stefan

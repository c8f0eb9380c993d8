#pragma once

#include "stefan/config.hpp"
#include "stefan/geometry.hpp"
#include "stefan/metrics.hpp"
#include "stefan/problems.hpp"
#include "stefan/thermo.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace stefan {

struct IterationRecord {
    int k = 0;
    double flux_residual = 0.0;
    std::optional<double> geom_error;
    std::optional<double> field_error;
    double wall_time = 0.0;
    /// RMS change of the interface between c^{k-1} and c^k on the shape grid.
    double step_size = 0.0;
};

struct SolverReport {
    std::string problem;
    SolverConfig config;
    std::vector<IterationRecord> iterations;
    std::optional<FieldSolution> field;
    std::optional<InterfaceModel> interface;
    bool converged = false;
    std::string stop_reason;
    std::optional<double> contraction;
    std::optional<ErrorSummary> errors;
    double total_time = 0.0;
};

/// Seeds derived from the run seed.
std::uint64_t field_seed(const SolverConfig& cfg, int phase);
std::uint64_t interface_seed(const SolverConfig& cfg);
std::uint64_t sampling_seed(const SolverConfig& cfg);

/// c^(0): fit of the initial interface extended constantly in time.
InterfaceModel initial_interface(const ProblemSpec& problem, const SolverConfig& cfg);

/// Relaxed splitting loop: sample, thermo step, flux residual, stop test,
/// kinematic step, relaxation.
using IterationCallback = std::function<void(const IterationRecord&)>;

SolverReport solve(const ProblemSpec& problem, const SolverConfig& cfg,
                   const IterationCallback& on_iteration = {});

/// exp of the least-squares slope of log(error) against k over [first, last].
double estimate_contraction(const std::vector<double>& errors, const std::vector<int>& ks);
double estimate_contraction(const SolverReport& report, int first, int last);

/// Window: from iteration 3 to the last iteration whose geometric error
/// stays above 100x the run minimum (and above 100 eps).
std::optional<double> estimate_contraction(const SolverReport& report);

} // namespace stefan

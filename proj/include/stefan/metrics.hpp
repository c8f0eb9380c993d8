#pragma once

#include "stefan/geometry.hpp"
#include "stefan/problems.hpp"
#include "stefan/thermo.hpp"

#include <Eigen/Dense>

namespace stefan {

struct RelativeL2 {
    double value = 0.0;
    bool zero_denominator = false; // value is then the absolute norm
};

RelativeL2 relative_l2(const Eigen::VectorXd& pred, const Eigen::VectorXd& exact);

/// Field samples used for the field error.
struct FieldGrid {
    Eigen::MatrixXd points; // space-time rows
    std::vector<int> phase; // exact phase of each row
};

/// Interface samples used for the interface error.
struct ShapeGrid {
    Eigen::MatrixXd param;
    Eigen::VectorXd time;
};

/// Tensor (or seeded random) grid over the evaluation box, restricted to the
/// active exact phases; points within 1e-9 of the exact interface are dropped.
FieldGrid field_grid(const ProblemSpec& problem);
ShapeGrid shape_grid(const ProblemSpec& problem);

struct ErrorSummary {
    double rel_l2_field = 0.0;
    double rel_l2_interface = 0.0;
    double max_abs_field = 0.0;
    double max_abs_interface = 0.0;
    int n_field = 0;
    int n_interface = 0;
};

struct FieldComparison {
    Eigen::VectorXd pred;
    Eigen::VectorXd exact;
};

FieldComparison compare_field(const FieldSolution& sol, const ProblemSpec& problem, const FieldGrid& grid);
FieldComparison compare_interface(const InterfaceModel& model, const ProblemSpec& problem,
                                  const ShapeGrid& grid);

ErrorSummary summarize(const FieldSolution& sol, const InterfaceModel& model, const ProblemSpec& problem,
                       const FieldGrid& fgrid, const ShapeGrid& sgrid);
ErrorSummary summarize(const FieldSolution& sol, const InterfaceModel& model, const ProblemSpec& problem);

} // namespace stefan

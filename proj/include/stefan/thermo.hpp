#pragma once

#include "stefan/basis.hpp"
#include "stefan/config.hpp"
#include "stefan/geometry.hpp"
#include "stefan/problems.hpp"
#include "stefan/sampling.hpp"

#include <Eigen/Dense>

#include <array>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace stefan {

using BasisPtr = std::shared_ptr<const RandomFeatureBasis>;

/// Per-phase weights over per-phase frozen bases.
struct FieldSolution {
    std::array<BasisPtr, 2> basis;
    std::array<Eigen::VectorXd, 2> weights;
    std::array<double, 2> k{1.0, 1.0};
    std::array<bool, 2> active{true, true};
    int dim = 1;
    bool transient = true;
};

struct FieldValue {
    double u = 0.0;
    Eigen::VectorXd grad;
    double u_t = 0.0;
};

FieldValue eval_field(const FieldSolution& sol, int phase, const Eigen::VectorXd& x, double t);

/// u values of one phase at many space-time rows.
Eigen::VectorXd eval_field_values(const FieldSolution& sol, int phase, const Eigen::MatrixXd& points);
/// Normal derivative of one phase at interface samples.
Eigen::VectorXd eval_normal_derivative(const FieldSolution& sol, int phase,
                                       const InterfaceSamples& s);

struct RowBlock {
    std::string label;
    int begin = 0;
    int count = 0;
    double lambda = 1.0;
};

struct AssembledSystem {
    Eigen::MatrixXd matrix;
    Eigen::VectorXd rhs;
    std::vector<RowBlock> blocks;
};

/// Rows of one phase, each block scaled by sqrt(lambda / N_block).
/// other_phase_values carries the phase-1 interface values needed by the
/// thermal resistance rows of phase 2.
AssembledSystem assemble(const ProblemSpec& problem, int phase, const CollocationSet& points,
                         const RandomFeatureBasis& basis, const Penalties& penalties,
                         const Eigen::VectorXd* other_phase_values = nullptr);

struct ThermoResult {
    FieldSolution solution;
    /// per phase, per block: root of the block's contribution to the loss
    std::array<std::vector<std::pair<std::string, double>>, 2> block_residuals;
    std::array<int, 2> rank{0, 0};
};

ThermoResult thermo_step(const ProblemSpec& problem, const CollocationSet& points,
                         const std::array<BasisPtr, 2>& bases, const Penalties& penalties,
                         double rcond);

} // namespace stefan

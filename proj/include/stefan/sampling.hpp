#pragma once

#include "stefan/config.hpp"
#include "stefan/geometry.hpp"
#include "stefan/problems.hpp"

#include <Eigen/Dense>

#include <array>
#include <vector>

namespace stefan {

/// Points are space-time rows (x..., t); stationary problems drop t.
struct PhasePoints {
    Eigen::MatrixXd interior;
    Eigen::MatrixXd initial;
    Eigen::MatrixXd boundary;
    std::vector<int> boundary_face;
};

/// Interface samples with the frozen geometry attached.
struct InterfaceSamples {
    Eigen::MatrixXd param; // n x param_dim
    Eigen::VectorXd time;
    Eigen::MatrixXd points; // space-time rows at the (clamped) interface
    Eigen::MatrixXd normal; // n x d
    Eigen::VectorXd normal_velocity;
    Eigen::VectorXd curvature;
    Eigen::VectorXd metric;

    int size() const { return static_cast<int>(time.size()); }
};

struct CollocationSet {
    std::array<PhasePoints, 2> phase;
    InterfaceSamples interface;
    int iteration = 0;
    SeedPolicy policy = SeedPolicy::FixedAcrossIterations;
};

/// Frozen geometry at given (param, t) samples.
InterfaceSamples interface_samples(const ProblemSpec& problem, const InterfaceModel& model,
                                   const Eigen::MatrixXd& param, const Eigen::VectorXd& time);

CollocationSet sample_collocation(const ProblemSpec& problem, const InterfaceModel& model,
                                  const SampleCounts& counts, int k, std::uint64_t seed,
                                  SeedPolicy policy);

} // namespace stefan

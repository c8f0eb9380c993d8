#pragma once

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <vector>

namespace stefan {

/// Frozen random sine features sin(w_j . z + b_j).
class RandomFeatureBasis {
public:
    RandomFeatureBasis(Eigen::MatrixXd weights, Eigen::VectorXd biases, double weight_scale,
                       std::uint64_t seed);

    int count() const { return static_cast<int>(biases_.size()); }
    int input_dim() const { return static_cast<int>(weights_.cols()); }
    const Eigen::MatrixXd& weights() const { return weights_; }
    const Eigen::VectorXd& biases() const { return biases_; }
    double weight_scale() const { return weight_scale_; }
    std::uint64_t seed() const { return seed_; }

private:
    Eigen::MatrixXd weights_; // count x input_dim
    Eigen::VectorXd biases_;
    double weight_scale_;
    std::uint64_t seed_;
};

/// Weights uniform on [-scale, scale], biases uniform on [-pi, pi].
RandomFeatureBasis make_basis(int n, int input_dim, double weight_scale, std::uint64_t seed);

/// Same law, with a separate half-width per input coordinate. A zero entry
/// removes the dependence on that coordinate.
RandomFeatureBasis make_basis(int n, const std::vector<double>& scales, std::uint64_t seed);

/// Derivative multi-index, one entry per input coordinate.
using MultiIndex = std::vector<int>;

Eigen::VectorXd eval_features(const RandomFeatureBasis& basis, const Eigen::VectorXd& z);
Eigen::VectorXd eval_derivative(const RandomFeatureBasis& basis, const Eigen::VectorXd& z,
                                const MultiIndex& alpha);

/// Features and derivatives of a whole point set (one point per row).
/// sin and cos of the phases are computed once and reused.
class FeatureTable {
public:
    FeatureTable(const RandomFeatureBasis& basis, const Eigen::MatrixXd& points);

    int rows() const { return static_cast<int>(sin_.rows()); }
    const Eigen::MatrixXd& value() const { return sin_; }
    Eigen::MatrixXd d(int k) const;
    Eigen::MatrixXd dd(int k, int l) const;
    Eigen::MatrixXd derivative(const MultiIndex& alpha) const;

private:
    const RandomFeatureBasis* basis_;
    Eigen::MatrixXd sin_;
    Eigen::MatrixXd cos_;
};

} // namespace stefan

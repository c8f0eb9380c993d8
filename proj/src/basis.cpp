#include "stefan/basis.hpp"

#include "stefan/error.hpp"
#include "stefan/rng.hpp"

#include <cmath>
#include <numbers>

namespace stefan {

RandomFeatureBasis::RandomFeatureBasis(Eigen::MatrixXd weights, Eigen::VectorXd biases,
                                       double weight_scale, std::uint64_t seed)
    : weights_(std::move(weights)), biases_(std::move(biases)), weight_scale_(weight_scale),
      seed_(seed) {
    if (weights_.rows() != biases_.size())
        throw Error(ErrorKind::DimensionMismatch, "weights and biases disagree on count");
}

RandomFeatureBasis make_basis(int n, int input_dim, double weight_scale, std::uint64_t seed) {
    if (input_dim < 1) throw Error(ErrorKind::InvalidArgument, "input_dim must be >= 1");
    if (!(weight_scale > 0)) throw Error(ErrorKind::InvalidArgument, "weight_scale must be > 0");
    return make_basis(n, std::vector<double>(static_cast<size_t>(input_dim), weight_scale), seed);
}

RandomFeatureBasis make_basis(int n, const std::vector<double>& scales, std::uint64_t seed) {
    if (n < 1) throw Error(ErrorKind::InvalidArgument, "basis count must be >= 1");
    if (scales.empty()) throw Error(ErrorKind::InvalidArgument, "input_dim must be >= 1");
    double smax = 0.0;
    for (double s : scales) {
        if (!(s >= 0) || !std::isfinite(s))
            throw Error(ErrorKind::InvalidArgument, "weight scales must be finite and >= 0");
        smax = std::max(smax, s);
    }
    if (!(smax > 0)) throw Error(ErrorKind::InvalidArgument, "at least one weight scale must be > 0");

    const int dim = static_cast<int>(scales.size());
    Eigen::MatrixXd w(n, dim);
    Eigen::VectorXd b(n);
    Rng rng(seed);
    // row by row: dim weights then the bias
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < dim; ++k) w(j, k) = scales[k] * rng.uniform(-1.0, 1.0);
        b(j) = rng.uniform(-std::numbers::pi, std::numbers::pi);
    }
    return RandomFeatureBasis(std::move(w), std::move(b), smax, seed);
}

namespace {

void check_order(const RandomFeatureBasis& basis, const MultiIndex& alpha) {
    if (static_cast<int>(alpha.size()) != basis.input_dim())
        throw Error(ErrorKind::DimensionMismatch, "multi-index length differs from input_dim");
    int total = 0;
    for (int a : alpha) {
        if (a < 0) throw Error(ErrorKind::InvalidArgument, "negative derivative order");
        total += a;
    }
    if (total > 2) throw Error(ErrorKind::UnsupportedOrder, "derivative order above 2");
}

} // namespace

Eigen::VectorXd eval_features(const RandomFeatureBasis& basis, const Eigen::VectorXd& z) {
    if (z.size() != basis.input_dim())
        throw Error(ErrorKind::DimensionMismatch, "point length differs from input_dim");
    Eigen::VectorXd phase = basis.weights() * z + basis.biases();
    return phase.array().sin().matrix();
}

Eigen::VectorXd eval_derivative(const RandomFeatureBasis& basis, const Eigen::VectorXd& z,
                                const MultiIndex& alpha) {
    if (z.size() != basis.input_dim())
        throw Error(ErrorKind::DimensionMismatch, "point length differs from input_dim");
    check_order(basis, alpha);
    Eigen::MatrixXd zz = z.transpose();
    return FeatureTable(basis, zz).derivative(alpha).row(0).transpose();
}

FeatureTable::FeatureTable(const RandomFeatureBasis& basis, const Eigen::MatrixXd& points)
    : basis_(&basis) {
    if (points.cols() != basis.input_dim())
        throw Error(ErrorKind::DimensionMismatch, "point set width differs from input_dim");
    Eigen::MatrixXd phase = points * basis.weights().transpose();
    phase.rowwise() += basis.biases().transpose();
    sin_ = phase.array().sin().matrix();
    cos_ = phase.array().cos().matrix();
}

Eigen::MatrixXd FeatureTable::d(int k) const {
    return cos_ * basis_->weights().col(k).asDiagonal();
}

Eigen::MatrixXd FeatureTable::dd(int k, int l) const {
    Eigen::VectorXd s = basis_->weights().col(k).cwiseProduct(basis_->weights().col(l));
    return -(sin_ * s.asDiagonal());
}

Eigen::MatrixXd FeatureTable::derivative(const MultiIndex& alpha) const {
    check_order(*basis_, alpha);
    int first = -1, second = -1;
    for (int k = 0; k < static_cast<int>(alpha.size()); ++k) {
        for (int r = 0; r < alpha[k]; ++r) (first < 0 ? first : second) = k;
    }
    if (first < 0) return sin_;
    if (second < 0) return d(first);
    return dd(first, second);
}

} // namespace stefan

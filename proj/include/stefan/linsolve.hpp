#pragma once

#include <Eigen/Dense>

namespace stefan {

struct LstsqResult {
    Eigen::VectorXd solution;
    double residual_norm = 0.0;
    int effective_rank = 0;
    double singular_value_ratio = 0.0; // smallest kept / largest
};

/// rcond used when none is given: 1e-12 * max(m, n).
double default_rcond(Eigen::Index m, Eigen::Index n);

/// Minimal-norm least squares through the SVD (LAPACK dgelsd).
/// Singular values below rcond * sigma_max are dropped. A negative rcond
/// selects default_rcond. damping > 0 adds Tikhonov rows sqrt(damping) * I.
LstsqResult solve_lstsq(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, double rcond = -1.0,
                        double damping = 0.0);

} // namespace stefan

#include "stefan/linsolve.hpp"

#include "stefan/error.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <vector>

namespace stefan {

double default_rcond(Eigen::Index m, Eigen::Index n) {
    return 1e-12 * static_cast<double>(std::max(m, n));
}

LstsqResult solve_lstsq(const Eigen::MatrixXd& a, const Eigen::VectorXd& y, double rcond,
                        double damping) {
    const Eigen::Index m = a.rows(), n = a.cols();
    if (m < 1 || n < 1) throw Error(ErrorKind::InvalidArgument, "empty least-squares system");
    if (y.size() != m) throw Error(ErrorKind::DimensionMismatch, "rhs length differs from rows");
    if (!a.allFinite() || !y.allFinite())
        throw Error(ErrorKind::NonFinite, "least-squares input contains NaN or Inf");
    if (damping < 0) throw Error(ErrorKind::InvalidArgument, "damping must be >= 0");
    if (rcond < 0) rcond = default_rcond(m, n);

    const Eigen::Index rows = damping > 0 ? m + n : m;
    const Eigen::Index ldb = std::max(rows, n);
    Eigen::MatrixXd work_a = Eigen::MatrixXd::Zero(rows, n);
    work_a.topRows(m) = a;
    if (damping > 0) work_a.bottomRows(n).diagonal().setConstant(std::sqrt(damping));
    Eigen::VectorXd b = Eigen::VectorXd::Zero(ldb);
    b.head(m) = y;

    std::vector<double> s(static_cast<size_t>(std::min(rows, n)));
    lapack_int rank = 0;
    lapack_int info = LAPACKE_dgelsd(LAPACK_COL_MAJOR, static_cast<lapack_int>(rows),
                                     static_cast<lapack_int>(n), 1, work_a.data(),
                                     static_cast<lapack_int>(rows), b.data(),
                                     static_cast<lapack_int>(ldb), s.data(), rcond, &rank);
    if (info != 0) throw Error(ErrorKind::NonFinite, "dgelsd failed to converge");

    LstsqResult out;
    out.solution = b.head(n);
    out.residual_norm = (a * out.solution - y).norm();
    out.effective_rank = static_cast<int>(rank);
    out.singular_value_ratio = (rank > 0 && s[0] > 0) ? s[static_cast<size_t>(rank - 1)] / s[0] : 0.0;
    return out;
}

} // namespace stefan

#include "stefan/special.hpp"

#include "stefan/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>

namespace stefan {

double erf(double x) { return std::erf(x); }
double erfc(double x) { return std::erfc(x); }

double exp_integral_e1(double x) {
    if (!(x > 0) || !std::isfinite(x))
        throw Error(ErrorKind::DomainError, "E1 needs a finite x > 0");
    constexpr double eps = std::numeric_limits<double>::epsilon();
    if (x <= 1.0) {
        // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
        double sum = 0.0, term = 1.0;
        for (int k = 1; k < 200; ++k) {
            term *= -x / k;
            const double add = term / k;
            sum += add;
            if (std::fabs(add) < eps * std::fabs(sum)) break;
        }
        return -std::numbers::egamma - std::log(x) - sum;
    }
    // e^{-x} / (x + 1 - 1^2/(x + 3 - 2^2/(x + 5 - ...)))
    constexpr double tiny = 1e-300;
    double b = x + 1.0, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -static_cast<double>(i) * i;
        b += 2.0;
        d = 1.0 / (an * d + b);
        c = b + an / c;
        const double del = c * d;
        h *= del;
        if (std::fabs(del - 1.0) < eps) break;
    }
    return h * std::exp(-x);
}

double case2_residual(double a) {
    return a * std::sqrt(std::numbers::pi) - std::exp(-a * a) / std::erf(a) +
           std::exp(-a * a / 2.0) / (std::numbers::sqrt2 * std::erfc(a / std::numbers::sqrt2));
}

double frank3d_profile(double eta) {
    return std::exp(-eta * eta) / eta - std::sqrt(std::numbers::pi) * std::erfc(eta);
}

double frank2d_latent_heat(double lambda, double u_m, double u_inf) {
    const double l2 = lambda * lambda;
    return (u_m - u_inf) / (l2 * std::exp(l2) * exp_integral_e1(l2));
}

double frank3d_latent_heat(double lambda, double u_m, double u_inf) {
    return (u_m - u_inf) * std::exp(-lambda * lambda) /
           (2.0 * lambda * lambda * lambda * frank3d_profile(lambda));
}

double solve_similarity_constant(SimilarityCase c) {
    switch (c) {
    case SimilarityCase::Frank2D: return frank2d_latent_heat(0.5, 0.0, -1.0);
    case SimilarityCase::Frank3D: return frank3d_latent_heat(0.6, 0.0, -1.0);
    case SimilarityCase::TwoPhaseCase2: break;
    }
    double lo = 0.01, hi = 3.0;
    double flo = case2_residual(lo), fhi = case2_residual(hi);
    if (!(flo < 0 && fhi > 0)) throw Error(ErrorKind::BracketFailure, "Case 2 root not bracketed");
    while (hi - lo > 1e-15 * hi) {
        const double mid = 0.5 * (lo + hi);
        if (mid <= lo || mid >= hi) break;
        (case2_residual(mid) < 0 ? lo : hi) = mid;
    }
    const double rlo = std::fabs(case2_residual(lo)), rhi = std::fabs(case2_residual(hi));
    return rlo <= rhi ? lo : hi;
}

} // namespace stefan

#pragma once

namespace stefan {

/// Error function and complement (thin wrappers over the C library, which
/// computes erfc directly rather than as 1 - erf).
double erf(double x);
double erfc(double x);

/// Exponential integral E1(x) = int_x^inf e^{-s}/s ds for x > 0.
/// Power series for x <= 1, modified Lentz continued fraction above.
double exp_integral_e1(double x);

/// Self-similar constants used by the benchmark catalog.
enum class SimilarityCase { TwoPhaseCase2, Frank2D, Frank3D };

/// TwoPhaseCase2: root alpha of the transcendental equation (bisection).
/// Frank2D / Frank3D: latent heat L for the growth constant lambda
/// (0.5 and 0.6 respectively) with u_m = 0 and u_inf = -1.
double solve_similarity_constant(SimilarityCase c);

/// Residual of the Case 2 transcendental equation at alpha.
double case2_residual(double alpha);

/// Frank 3D similarity profile F(eta) = e^{-eta^2}/eta - sqrt(pi) erfc(eta).
double frank3d_profile(double eta);

double frank2d_latent_heat(double lambda, double u_m, double u_inf);
double frank3d_latent_heat(double lambda, double u_m, double u_inf);

} // namespace stefan

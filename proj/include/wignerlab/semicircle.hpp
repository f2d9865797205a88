#pragma once

#include <complex>

// Closed-form semicircle law on [-2, 2]: density g, distribution function G,
// quantiles and the Stieltjes transform s(z). All functions are pure.

namespace wigner::semicircle {

/// g(x) = sqrt(4 - x^2) / (2 pi) on [-2, 2], zero elsewhere.
double density(double x);

/// G(x); clamped to 0 below -2 and 1 above 2.
double cdf(double x);

/// Solves G(x) = p by bisection on [-2, 2] until |G(x) - p| <= 1e-12
/// or the bracket collapses to adjacent doubles.
double quantile(double p);

/// Root of s^2 + z s + 1 = 0 with Im s > 0. Requires Im z > 0.
std::complex<double> stieltjes(std::complex<double> z);

/// Distance to the nearer spectral edge, 2 - |x|.
double edge_distance(double x);

} // namespace wigner::semicircle

#pragma once

#include <complex>

namespace parisian {

using Complex = std::complex<double>;

double erf(double x);
double erfc(double x);
double normal_cdf(double x);

/// Scaled complementary error function exp(x^2) erfc(x), x >= 0.
double erfcx(double x);

/// erfcx for complex argument with Re z >= 0 (the strip the transforms need).
Complex erfcx(Complex z);

/// Faddeeva function w(z) = exp(-z^2) erfc(-iz), requires Im z >= 0.
Complex faddeeva_w(Complex z);

/// Dawson integral F(x) = exp(-x^2) int_0^x exp(t^2) dt.
double dawson(double x);

/// Moment transform of the Brownian meander endpoint law,
/// psi(z) = int_0^inf x exp(-x^2/2 + z x) dx, entire in z; psi(0) = 1.
/// Evaluated in closed form through erfcx. Throws std::range_error when
/// exp(z^2/2) overflows (only possible for Re z > 0 with |z| ~ 38+).
Complex psi(Complex z);

/// First passage time density of standard BM to level b > 0 at time w > 0.
double first_passage_density(double b, double w);

/// int_0^d exp(-z w) d mu_b(w) for b > 0, d > 0, Re z >= 0. Computed by
/// adaptive quadrature after the substitution w = b^2/t^2, which removes the
/// w -> 0 boundary layer; |result| <= erfc(b / sqrt(2 d)).
Complex truncated_fp_transform(double b, double d, Complex z,
                               double tol = 1e-13);

/// Probability that standard BM stays below b > 0 on [0, d]:
/// erf(b / sqrt(2 d)).
double survival_probability(double b, double d);

}  // namespace parisian

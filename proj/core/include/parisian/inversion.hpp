#pragma once

#include <complex>
#include <functional>

namespace parisian {

using Complex = std::complex<double>;

enum class InversionMethod { euler_summation, gaver_stehfest };

/// Numerical Laplace-inversion settings. `terms` counts contour nodes for
/// euler-summation (stable range 20..60) and the Stehfest order for
/// gaver-stehfest (even, 8..18; above 14 fixed-precision roundoff dominates
/// and a warning is emitted).
struct InverterConfig {
  InversionMethod method = InversionMethod::euler_summation;
  int terms = 45;
  double precision_target = 1e-8;

  void validate() const;  // throws std::domain_error
};

/// Invert a Laplace transform known on the right half-plane at time u > 0.
/// The transform must satisfy conjugate symmetry (real time-domain function).
/// euler-summation: Abate-Whitt Bromwich series with binomial averaging,
/// contour shift derived from u and precision_target. gaver-stehfest: real
/// axis only. Violent oscillation of the partial sums raises NumericalError
/// with the partial sums attached.
double laplace_invert(const std::function<Complex(Complex)>& transform,
                      double u, const InverterConfig& config = {});

}  // namespace parisian

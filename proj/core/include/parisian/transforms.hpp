#pragma once

#include <complex>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace parisian {

using Complex = std::complex<double>;

/// Normalized excursion problem: barrier level b (log-moneyness of the
/// barrier over volatility), full window D, and remaining requirement d.
/// d < D is only possible when b > 0 (an excursion is in progress).
struct ExcursionSpec {
  double b = 0.0;
  double window = 0.0;     ///< D
  double remaining = 0.0;  ///< d in (0, D]

  void validate() const;  // throws std::domain_error
  /// time below which the knock-in density vanishes (D for b <= 0, d for b > 0)
  double threshold() const { return b <= 0.0 ? window : remaining; }
};

/// A Laplace transform known on the right half-plane. The time-domain
/// function is real, so eval(conj z) == conj(eval z).
struct TransformEvaluator {
  std::function<Complex(Complex)> eval;
  std::string domain_note;
  double threshold = 0.0;

  Complex operator()(Complex z) const { return eval(z); }
};

/// E[exp(-z H_b)] of the excursion-age clock, Re z > 0.
/// b <= 0: exp(b sqrt(2z)) / psi(sqrt(2 D z)).
/// b > 0:  erf(b/sqrt(2d)) exp(-z d) + truncated_fp_transform / psi(sqrt(2 D z)).
Complex exit_time_transform(const ExcursionSpec& spec, Complex z,
                            double tol = 1e-13);

/// Density of the clock position W(H_b) for b <= 0:
/// (b - x) exp(-(x-b)^2 / (2D)) / D on x <= b, zero above.
double hitting_measure_density(const ExcursionSpec& spec, double x);

/// A finite nonnegative measure given by a density on [lower, upper] with
/// known kink locations of the combined integrand.
struct MeasureDensity {
  std::function<double(double)> density;
  double lower = 0.0;
  double upper = 0.0;
  std::vector<double> splits;
};

struct PointMass {
  double x = 0.0;
  double weight = 1.0;
};

/// exit_factor * integral of exp(-|x-y| sqrt(2z)) / sqrt(2z) against the
/// measure; Re z > 0.
Complex lemma_transform(Complex exit_factor, const MeasureDensity& measure,
                        double y, Complex z, double tol = 1e-13);
Complex lemma_transform(Complex exit_factor, std::span<const PointMass> atoms,
                        double y, Complex z);

/// Laplace transform of the knock-in density h_b(., y), b <= 0 constellation.
TransformEvaluator hb_transform_nonpos(const ExcursionSpec& spec, double y,
                                       double tol = 1e-13);

/// b > 0 constellation, product of the exit-time transform with the kernel
/// integral over the combined hitting measure (the authoritative form).
TransformEvaluator hb_transform_pos_product(const ExcursionSpec& spec,
                                            double y, double tol = 1e-13);

/// b > 0 constellation, the four-term grouped sum with the error-function
/// coefficients. Kept as an independently evaluated cross-check of the
/// product form; its survivor-measure kernel integrates the reflection
/// difference over the whole line rather than the sub-barrier support.
TransformEvaluator hb_transform_pos_grouped(const ExcursionSpec& spec,
                                            double y, double tol = 1e-13);

/// Dispatches on the sign of b.
TransformEvaluator paris_density_transform(const ExcursionSpec& spec, double y,
                                           double tol = 1e-13);

/// Closed-form time-domain densities of the grouped decomposition (b > 0).
/// h_b3 is cross-checked once per process against its Gaussian-integral
/// representation; on mismatch beyond 1e-6 the quadrature form takes over
/// and a diagnostic is emitted on stderr.
double h_b3_closed(double u, double y, const ExcursionSpec& spec);
double h_b4_closed(double u, double y, const ExcursionSpec& spec);
bool h_b3_uses_quadrature_fallback();

namespace detail {

/// Kernel integral against the unit-mass hitting law below the barrier.
Complex rayleigh_kernel_integral(double b, double D, double y, Complex z,
                                 double tol);

/// Kernel integral against the reflection difference
/// (exp(-x^2/2d) - exp(-(x-2b)^2/2d)) / sqrt(2 pi d): over x < b when
/// full == false (the survivor law), over the whole line when full == true.
Complex survivor_kernel_integral(double b, double d, double y, Complex z,
                                 bool full, double tol);

/// Gaussian-integral representation of h_b3.
double h_b3_integral_rep(double u, double y, const ExcursionSpec& spec,
                         double tol = 1e-12);

}  // namespace detail

}  // namespace parisian

#include "parisian/special.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "parisian/quadrature.hpp"

namespace parisian {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2Pi = std::sqrt(2.0 * kPi);
const double kSqrtPi = std::sqrt(kPi);

// Midpoint-rule evaluation of w(z) = (i/pi) int exp(-t^2)/(z - t) dt for
// Im z > 0. With step h the rule is exponentially accurate
// (error ~ exp(-pi^2/h^2)); the pole at t = z contributes the residue
// correction 2 exp(-z^2) q/(1+q), q = exp(2 pi i z / h), which belongs only
// while Im z < pi/h (beyond that it is below the formula error anyway).
constexpr double kWH = 0.45;
constexpr int kWK = 15;  // nodes at (k + 1/2) h, k in [-kWK, kWK)

Complex w_midpoint(Complex z) {
  Complex sum = 0.0;
  for (int k = -kWK; k < kWK; ++k) {
    const double t = (k + 0.5) * kWH;
    sum += std::exp(-t * t) / (z - t);
  }
  Complex w = Complex(0.0, kWH / kPi) * sum;
  if (z.imag() < kPi / kWH) {
    const Complex q = std::exp(Complex(0.0, 2.0 * kPi / kWH) * z);
    w += 2.0 * std::exp(-z * z) * q / (1.0 + q);
  }
  return w;
}

Complex w_real_axis(double x) {
  // w(x) = exp(-x^2) + 2i F(x)/sqrt(pi) on the real line
  return Complex(std::exp(-x * x), 2.0 * dawson(x) / kSqrtPi);
}

}  // namespace

double erf(double x) { return std::erf(x); }
double erfc(double x) { return std::erfc(x); }
double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

double dawson(double x) {
  // Rybicki's exponentially convergent sum over odd multiples of h.
  constexpr double h = 0.2;
  const double xa = std::abs(x);
  double sum = 0.0;
  const int n_lo = static_cast<int>(std::floor((xa - 6.5) / h));
  const int n_hi = static_cast<int>(std::ceil((xa + 6.5) / h));
  for (int n = std::max(1, n_lo) | 1; n <= n_hi; n += 2) {
    const double dm = xa - n * h;
    const double dp = xa + n * h;
    sum += (std::exp(-dm * dm) - std::exp(-dp * dp)) / n;
  }
  const double f = sum / kSqrtPi;
  return x < 0 ? -f : f;
}

Complex faddeeva_w(Complex z) {
  if (z.imag() < 0.0)
    throw std::domain_error("faddeeva_w: requires Im z >= 0");
  if (z.imag() == 0.0) return w_real_axis(z.real());
  return w_midpoint(z);
}

double erfcx(double x) {
  if (x < 0.0) throw std::domain_error("erfcx: requires x >= 0");
  return faddeeva_w(Complex(0.0, x)).real();
}

Complex erfcx(Complex z) {
  if (z.real() < 0.0) throw std::domain_error("erfcx: requires Re z >= 0");
  if (z.imag() == 0.0) return erfcx(z.real());
  // w(iz) has Im(iz) = Re z >= 0
  return faddeeva_w(Complex(-z.imag(), z.real()));
}

Complex psi(Complex z) {
  const Complex half_sq = 0.5 * z * z;
  if (z.real() >= 0.0) {
    if (half_sq.real() > 709.0)
      throw std::range_error("psi: exp(z^2/2) overflows for this argument");
    return 1.0 + z * (kSqrt2Pi * std::exp(half_sq) -
                      std::sqrt(kPi / 2.0) * erfcx(z / std::numbers::sqrt2));
  }
  // reflected branch stays bounded: Phi(z) = exp(-z^2/2) erfcx(-z/sqrt2)/2
  return 1.0 + z * std::sqrt(kPi / 2.0) * erfcx(-z / std::numbers::sqrt2);
}

double first_passage_density(double b, double w) {
  if (!(b > 0.0)) throw std::domain_error("first_passage_density: b must be > 0");
  if (!(w > 0.0)) throw std::domain_error("first_passage_density: w must be > 0");
  return b / kSqrt2Pi * std::pow(w, -1.5) * std::exp(-b * b / (2.0 * w));
}

Complex truncated_fp_transform(double b, double d, Complex z, double tol) {
  if (!(b > 0.0)) throw std::domain_error("truncated_fp_transform: b must be > 0");
  if (!(d > 0.0)) throw std::domain_error("truncated_fp_transform: d must be > 0");
  if (z.real() < 0.0)
    throw std::domain_error("truncated_fp_transform: requires Re z >= 0");
  const double lo = b / std::sqrt(d);
  const double hi = lo + kGaussianDecayCut + 0.5;
  const double bb = b * b;
  auto f = [&](double t) -> Complex {
    return 2.0 * std::exp(-0.5 * t * t) / kSqrt2Pi *
           std::exp(-z * (bb / (t * t)));
  };
  return integrate(f, lo, hi, tol).value;
}

double survival_probability(double b, double d) {
  if (!(b > 0.0)) throw std::domain_error("survival_probability: b must be > 0");
  if (!(d > 0.0)) throw std::domain_error("survival_probability: d must be > 0");
  return std::erf(b / std::sqrt(2.0 * d));
}

}  // namespace parisian

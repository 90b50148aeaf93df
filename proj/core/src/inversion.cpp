#include "parisian/inversion.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "parisian/errors.hpp"

namespace parisian {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double euler_invert(const std::function<Complex(Complex)>& F, double u,
                    int terms, double tol) {
  constexpr int M = 12;
  const int N = terms - M;
  // Contour shift: discretization error ~ exp(-A), kept two digits below the
  // precision target; the exp(A/2) prefactor stays within double range.
  const double A = std::clamp(-std::log(tol) + 4.6, 18.4, 30.0);
  const double g = A / (2.0 * u);
  const double scale = std::exp(0.5 * A) / u;

  std::vector<double> partial(N + M + 1);
  double s = 0.5 * F(Complex(g, 0.0)).real();
  partial[0] = s;
  double sign = -1.0;
  for (int k = 1; k <= N + M; ++k) {
    s += sign * F(Complex(g, k * std::numbers::pi / u)).real();
    partial[k] = s;
    sign = -sign;
  }

  // binomial average of partial sums s_N .. s_{N+m}
  auto binom_avg = [&](int m) {
    double acc = 0.0, binom = 1.0, norm = 0.0;
    for (int j = 0; j <= m; ++j) {
      acc += binom * partial[N + j];
      norm += binom;
      binom = binom * (m - j) / (j + 1.0);
    }
    return acc / norm;
  };
  const double avg_prev = binom_avg(M - 1);
  const double avg = binom_avg(M);

  const double result = scale * avg;
  const double spread = scale * std::abs(avg - avg_prev);
  if (!std::isfinite(result) || spread > 0.5 * std::abs(result) + 1e-6) {
    for (auto& p : partial) p *= scale;
    throw NumericalError(
        "laplace_invert: partial sums oscillate (transform unsuitable or "
        "evaluated at a jump)",
        spread, tol, result, partial);
  }
  return result;
}

double gaver_stehfest(const std::function<Complex(Complex)>& F, double u,
                      int n) {
  const int half = n / 2;
  const double ln2_u = std::numbers::ln2 / u;
  double acc = 0.0;
  for (int k = 1; k <= n; ++k) {
    double a = 0.0;
    for (int j = (k + 1) / 2; j <= std::min(k, half); ++j) {
      a += std::pow(static_cast<double>(j), half) * factorial(2 * j) /
           (factorial(half - j) * factorial(j) * factorial(j - 1) *
            factorial(k - j) * factorial(2 * j - k));
    }
    if ((k + half) % 2 != 0) a = -a;
    acc += a * F(Complex(k * ln2_u, 0.0)).real();
  }
  const double result = ln2_u * acc;
  if (!std::isfinite(result))
    throw NumericalError("laplace_invert: gaver-stehfest sum diverged", 1.0,
                         0.0, result);
  return result;
}

}  // namespace

void InverterConfig::validate() const {
  if (!(precision_target > 0.0) || !std::isfinite(precision_target))
    throw std::domain_error("InverterConfig: precision_target must be > 0");
  switch (method) {
    case InversionMethod::euler_summation:
      if (terms < 20 || terms > 60)
        throw std::domain_error(
            "InverterConfig: euler-summation terms must be in [20, 60]");
      break;
    case InversionMethod::gaver_stehfest:
      if (terms < 8 || terms > 18 || terms % 2 != 0)
        throw std::domain_error(
            "InverterConfig: gaver-stehfest terms must be even and in [8, 18]");
      if (terms > 14)
        std::cerr << "warning: gaver-stehfest with terms > 14 loses accuracy "
                     "in fixed precision\n";
      break;
  }
}

double laplace_invert(const std::function<Complex(Complex)>& transform,
                      double u, const InverterConfig& config) {
  if (!(u > 0.0)) throw std::domain_error("laplace_invert: u must be > 0");
  config.validate();
  switch (config.method) {
    case InversionMethod::euler_summation:
      return euler_invert(transform, u, config.terms, config.precision_target);
    case InversionMethod::gaver_stehfest:
      return gaver_stehfest(transform, u, config.terms);
  }
  throw std::logic_error("laplace_invert: unknown method");
}

}  // namespace parisian

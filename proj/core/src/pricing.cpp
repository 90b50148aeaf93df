#include "parisian/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "parisian/errors.hpp"
#include "parisian/quadrature.hpp"
#include "parisian/special.hpp"
#include "parisian/transforms.hpp"

namespace parisian {

double vanilla_call(const MarketParams& m, double strike, double tau) {
  if (!(strike > 0.0)) throw std::domain_error("vanilla_call: strike must be > 0");
  if (!(tau > 0.0)) throw std::domain_error("vanilla_call: tau must be > 0");
  const double vsqrt = m.volatility * std::sqrt(tau);
  const double d1 =
      (std::log(m.spot / strike) +
       (m.rate - m.dividend + 0.5 * m.volatility * m.volatility) * tau) /
      vsqrt;
  const double d2 = d1 - vsqrt;
  return m.spot * std::exp(-m.dividend * tau) * normal_cdf(d1) -
         strike * std::exp(-m.rate * tau) * normal_cdf(d2);
}

namespace {

PriceResult short_circuit(double threshold, const PricingConfig& cfg,
                          const char* method) {
  PriceResult r;
  r.value = 0.0;
  r.method = method;
  r.diagnostics.inverter = cfg.inverter;
  r.diagnostics.threshold = threshold;
  return r;
}

}  // namespace

PriceResult paris_down_in_call(const MarketParams& market,
                               const ParisianContract& contract,
                               const PricingConfig& config) {
  validate(market, contract);
  config.inverter.validate();
  const DerivedParams p = derive_params(market, contract);

  if (contract.barrier == 0.0)
    return short_circuit(0.0, config, "down-in/zero-barrier");

  const double threshold = p.b <= 0.0 ? contract.window : p.d;
  if (p.tau < threshold)
    return short_circuit(threshold, config, "down-in/below-threshold");

  // the inverted density jumps at the threshold; one Fourier resolution cell
  // of the contour must separate tau from it
  const double resolution = threshold / (2.0 * config.inverter.terms);
  if (p.tau < threshold + resolution)
    throw std::domain_error(
        "paris_down_in_call: tau within one inverter resolution step of the "
        "density threshold; the inversion rings at the jump");

  const ExcursionSpec spec{p.b, contract.window, p.d};
  const double sigma = market.volatility;
  const double spot = market.spot;
  const double strike = contract.strike;

  int nodes = 0;
  std::vector<std::pair<double, double>> negatives;  // (x, |negative density|)
  auto integrand = [&](double x) {
    ++nodes;
    const auto ev = paris_density_transform(spec, x, config.transform_tol);
    double h = laplace_invert(ev.eval, p.tau, config.inverter);
    if (h < 0.0) {
      negatives.emplace_back(x, -h);
      h = 0.0;
    }
    return std::exp(p.varpi * x) * (spot * std::exp(sigma * x) - strike) * h;
  };

  // Gaussian-decay truncation of the payoff integral: the density mass sits
  // below max(b, 0) and diffuses with variance tau, the payoff grows like
  // exp((varpi + sigma) x)
  const double x_peak =
      std::max(p.b, 0.0) + std::max(0.0, p.varpi + sigma) * p.tau;
  const double x_cap = std::max(x_peak, p.beta) +
                       (kGaussianDecayCut + 1.0) * std::sqrt(p.tau) +
                       3.0 * std::sqrt(contract.window);
  const double dx = 0.5 * std::sqrt(p.tau);
  const double block_tol = 0.1 * config.outer_tol;
  const double stop_tol = 0.05 * config.outer_tol;

  double total = 0.0;
  double last_block = 0.0;
  double lo = p.beta;
  while (lo < x_cap) {
    const double hi = std::min(lo + dx, x_cap);
    last_block = integrate(integrand, lo, hi, block_tol).value;
    total += last_block;
    lo = hi;
    if (lo > x_peak && std::abs(last_block) < stop_tol) break;
  }

  // mass of clamped negative inversion noise (trapezoid over observed nodes)
  double clamped = 0.0;
  if (!negatives.empty()) {
    std::sort(negatives.begin(), negatives.end());
    for (std::size_t i = 0; i + 1 < negatives.size(); ++i)
      clamped += 0.5 * (negatives[i].second + negatives[i + 1].second) *
                 (negatives[i + 1].first - negatives[i].first);
    if (negatives.size() == 1) clamped = negatives[0].second * dx / 15.0;
  }
  if (clamped > 1e-4)
    throw NumericalError(
        "paris_down_in_call: clamped negative density mass exceeds 1e-4 "
        "(misconfigured inversion)",
        clamped, 1e-4, total);

  PriceResult r;
  r.value = std::exp(-(market.rate + 0.5 * p.varpi * p.varpi) * p.tau) * total;
  r.method = config.inverter.method == InversionMethod::euler_summation
                 ? "laplace/euler-summation"
                 : "laplace/gaver-stehfest";
  r.diagnostics.inverter = config.inverter;
  r.diagnostics.outer_nodes = nodes;
  r.diagnostics.x_upper = lo;
  r.diagnostics.tail_bound = std::abs(last_block);
  r.diagnostics.threshold = threshold;
  r.diagnostics.clamped_mass = clamped;
  return r;
}

PriceResult paris_down_out_call(const MarketParams& market,
                                const ParisianContract& contract,
                                const PricingConfig& config) {
  const double vanilla =
      vanilla_call(market, contract.strike, contract.time_to_maturity);
  PriceResult in = paris_down_in_call(market, contract, config);
  PriceResult r;
  r.method = "parity/" + in.method;
  r.diagnostics = in.diagnostics;
  r.value = vanilla - in.value;
  if (r.value < 0.0) {
    const double tol = std::max(1e-10, 1e-8 * vanilla);
    if (-r.value > tol)
      r.diagnostics.note = "parity clamp beyond numeric tolerance (down-in "
                           "exceeded vanilla; upstream bug)";
    r.value = 0.0;
  }
  return r;
}

}  // namespace parisian

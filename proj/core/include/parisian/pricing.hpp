#pragma once

#include <string>

#include "parisian/inversion.hpp"
#include "parisian/model.hpp"

namespace parisian {

struct PricingConfig {
  InverterConfig inverter;
  /// general-purpose quadrature tolerance (absolute)
  double quadrature_tol = 1e-10;
  /// transform-level quadrature tolerance; tight because the inverter
  /// amplifies per-node errors by exp(A/2)/u
  double transform_tol = 1e-13;
  /// absolute tolerance of the outer payoff integral, in price units
  double outer_tol = 1e-7;
};

struct PriceDiagnostics {
  InverterConfig inverter;
  int outer_nodes = 0;        ///< payoff-integrand evaluations (= inversions)
  double x_upper = 0.0;       ///< truncation point of the payoff integral
  double tail_bound = 0.0;    ///< magnitude of the last integration block
  double threshold = 0.0;     ///< density threshold used (D or d)
  double clamped_mass = 0.0;  ///< integrated magnitude of negative densities
  std::string note;
};

struct PriceResult {
  double value = 0.0;
  std::string method;
  PriceDiagnostics diagnostics;
};

/// Black-Scholes call with carry rate (rate - dividend).
double vanilla_call(const MarketParams& market, double strike, double tau);

/// Paris down-and-in call by Laplace inversion of the knock-in density.
/// tau below the density threshold (or barrier == 0) short-circuits to an
/// exact zero; tau within one inverter resolution step of the threshold is
/// rejected (the density jumps there and the inversion rings).
PriceResult paris_down_in_call(const MarketParams& market,
                               const ParisianContract& contract,
                               const PricingConfig& config = {});

/// In/out parity: vanilla minus down-and-in, clamped at zero (a clamp beyond
/// the numeric tolerance is reported in the diagnostics note).
PriceResult paris_down_out_call(const MarketParams& market,
                                const ParisianContract& contract,
                                const PricingConfig& config = {});

}  // namespace parisian

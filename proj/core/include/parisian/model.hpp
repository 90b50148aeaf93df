#pragma once

#include <string>

namespace parisian {

/// Market constants of the lognormal model. Times are year fractions, rates
/// annualized with continuous compounding.
struct MarketParams {
  double spot = 0.0;        ///< current price, > 0
  double rate = 0.0;        ///< riskless rate, > 0
  double dividend = 0.0;    ///< continuous dividend yield, >= 0
  double volatility = 0.0;  ///< annualized volatility, > 0
};

/// Down-and-in contract with an excursion window. `elapsed_age` is how long
/// the spot has already spent below the barrier in the current excursion;
/// it is only meaningful (and only valid) when spot < barrier.
struct ParisianContract {
  double strike = 0.0;
  double barrier = 0.0;           ///< >= 0; 0 means the knock-in is impossible
  double window = 0.0;            ///< required consecutive time below barrier, > 0
  double time_to_maturity = 0.0;  ///< > 0
  double elapsed_age = 0.0;       ///< in [0, window)
};

/// Normalized Brownian coordinates.
struct DerivedParams {
  double varpi = 0.0;  ///< drift coefficient (rate - dividend - vol^2/2) / vol
  double b = 0.0;      ///< log(barrier/spot) / vol; -inf when barrier == 0
  double beta = 0.0;   ///< log(strike/spot) / vol
  double d = 0.0;      ///< remaining required excursion length, window - elapsed_age
  double tau = 0.0;    ///< time to maturity
};

/// Throws std::domain_error naming the violated invariant.
void validate(const MarketParams& market, const ParisianContract& contract);

/// Requires validate() to pass. barrier == 0 yields b = -infinity.
DerivedParams derive_params(const MarketParams& market,
                            const ParisianContract& contract);

}  // namespace parisian

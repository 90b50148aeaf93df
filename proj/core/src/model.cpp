#include "parisian/model.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace parisian {

namespace {

void require(bool ok, const char* invariant) {
  if (!ok) throw std::domain_error(std::string("invalid input: ") + invariant);
}

}  // namespace

void validate(const MarketParams& m, const ParisianContract& c) {
  require(std::isfinite(m.spot) && m.spot > 0.0, "spot must be finite and > 0");
  require(std::isfinite(m.rate) && m.rate > 0.0, "rate must be finite and > 0");
  require(std::isfinite(m.dividend) && m.dividend >= 0.0,
          "dividend must be finite and >= 0");
  require(std::isfinite(m.volatility) && m.volatility > 0.0,
          "volatility must be finite and > 0");
  require(std::isfinite(c.strike) && c.strike > 0.0,
          "strike must be finite and > 0");
  require(std::isfinite(c.barrier) && c.barrier >= 0.0,
          "barrier must be finite and >= 0");
  require(std::isfinite(c.window) && c.window > 0.0,
          "window must be finite and > 0");
  require(std::isfinite(c.time_to_maturity) && c.time_to_maturity > 0.0,
          "time_to_maturity must be finite and > 0");
  require(std::isfinite(c.elapsed_age) && c.elapsed_age >= 0.0,
          "elapsed_age must be finite and >= 0");
  require(c.elapsed_age < c.window,
          "elapsed_age must be < window (otherwise already knocked in)");
  if (c.elapsed_age > 0.0)
    require(m.spot < c.barrier,
            "elapsed_age > 0 requires spot < barrier (no excursion can be in "
            "progress at or above the barrier)");
}

DerivedParams derive_params(const MarketParams& m, const ParisianContract& c) {
  validate(m, c);
  DerivedParams p;
  p.varpi = (m.rate - m.dividend - 0.5 * m.volatility * m.volatility) /
            m.volatility;
  p.b = c.barrier == 0.0 ? -std::numeric_limits<double>::infinity()
                         : std::log(c.barrier / m.spot) / m.volatility;
  p.beta = std::log(c.strike / m.spot) / m.volatility;
  p.d = c.window - c.elapsed_age;
  p.tau = c.time_to_maturity;
  return p;
}

}  // namespace parisian

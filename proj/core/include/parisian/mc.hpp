#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "parisian/model.hpp"
#include "parisian/transforms.hpp"

namespace parisian {

/// Path-simulation settings. `steps_per_unit_time` fixes the grid step
/// h = 1 / steps_per_unit_time; `horizon` caps the excursion-clock samplers.
/// The antithetic flag applies to the price estimator (mirrored increments,
/// pairs counted once in the standard error).
struct PathConfig {
  long long paths = 100000;
  int steps_per_unit_time = 10000;
  std::uint64_t seed = 0;
  bool antithetic = false;
  double horizon = 40.0;

  void validate() const;  // throws std::domain_error
};

struct McEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  long long paths = 0;
  std::uint64_t seed = 0;
};

struct ComplexMcEstimate {
  Complex mean = 0.0;
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  long long paths = 0;
  std::uint64_t seed = 0;
  /// modulus bound on a truncated path's contribution error
  double truncation_bound = 0.0;
};

/// One simulated excursion-clock outcome of driftless BM: the time the clock
/// reached the window (capped at the configured horizon) and the position
/// there.
struct ExitSample {
  double age_time = 0.0;
  double position = 0.0;
  bool truncated = false;
};

/// Simulates W* with the restart clock (clock preloaded to window - remaining
/// when b > 0, reset whenever a grid point is at or above b) and returns one
/// sample per path. Paths are independent streams derived from (seed, index);
/// identical inputs reproduce bit-identical samples.
std::vector<ExitSample> sample_excursion_exit(const ExcursionSpec& spec,
                                              const PathConfig& config);

/// E[exp(-z H_b)] by path simulation; truncated paths contribute
/// exp(-z horizon). Requires Re z * horizon >= 20.
ComplexMcEstimate mc_exit_time_transform(const ExcursionSpec& spec, Complex z,
                                         const PathConfig& config);
ComplexMcEstimate mc_exit_time_transform(std::span<const ExitSample> samples,
                                         Complex z, const PathConfig& config);

/// E[exp(-z H_b) exp(-|W(H_b) - y| sqrt(2z)) / sqrt(2z)] by path simulation.
/// Requires Re z > 0 and Re z * horizon >= 20.
ComplexMcEstimate mc_hb_lemma_estimate(const ExcursionSpec& spec, double y,
                                       Complex z, const PathConfig& config);
ComplexMcEstimate mc_hb_lemma_estimate(std::span<const ExitSample> samples,
                                       double y, Complex z,
                                       const PathConfig& config);

/// Per-path knock-in flag and terminal spot under the risk-neutral dynamics,
/// streamed in path order.
void simulate_knock_in(
    const MarketParams& market, const ParisianContract& contract,
    const PathConfig& config,
    const std::function<void(bool knocked_in, double terminal_spot)>& sink);

/// Discounted knock-in call payoff estimate.
McEstimate mc_price(const MarketParams& market, const ParisianContract& contract,
                    const PathConfig& config);

/// Step-refinement protocol: one set of Brownian paths simulated at half the
/// configured step; the coarse estimate reuses the same paths on the
/// every-other-point grid, so the gap between the two is measured without
/// cross-run noise. `fine` is the better estimate; `bias_gap` the allowance.
struct RefinedPriceEstimate {
  McEstimate fine;
  McEstimate coarse;
  double bias_gap = 0.0;
};
RefinedPriceEstimate mc_price_refined(const MarketParams& market,
                                      const ParisianContract& contract,
                                      const PathConfig& config);

}  // namespace parisian

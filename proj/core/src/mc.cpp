#include "parisian/mc.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>

#include "parisian/rng.hpp"

namespace parisian {

namespace {

constexpr long long kBlock = 2048;

// Runs fn(path_begin, path_end, block_slot) over fixed-size blocks on worker
// threads. Slots are indexed by block, so any later combination step is
// deterministic regardless of the worker count.
template <class Slot, class Fn>
std::vector<Slot> run_blocks(long long n_paths, Fn&& fn) {
  const long long n_blocks = (n_paths + kBlock - 1) / kBlock;
  std::vector<Slot> slots(static_cast<std::size_t>(n_blocks));
  unsigned hw = std::thread::hardware_concurrency();
  unsigned n_threads = std::min<unsigned>(hw == 0 ? 1 : hw, 8);
  n_threads = std::min<unsigned>(n_threads, static_cast<unsigned>(n_blocks));
  std::atomic<long long> next{0};
  auto worker = [&] {
    for (;;) {
      const long long blk = next.fetch_add(1);
      if (blk >= n_blocks) return;
      const long long begin = blk * kBlock;
      const long long end = std::min(begin + kBlock, n_paths);
      fn(begin, end, slots[static_cast<std::size_t>(blk)]);
    }
  };
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(n_threads);
    for (unsigned i = 0; i < n_threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return slots;
}

struct MomentAcc {
  double sum = 0.0;
  double sumsq = 0.0;
  long long n = 0;
  void add(double x) {
    sum += x;
    sumsq += x * x;
    ++n;
  }
};

McEstimate finish(const std::vector<MomentAcc>& slots, std::uint64_t seed,
                  long long reported_paths) {
  double sum = 0.0, sumsq = 0.0;
  long long n = 0;
  for (const auto& s : slots) {
    sum += s.sum;
    sumsq += s.sumsq;
    n += s.n;
  }
  McEstimate est;
  est.paths = reported_paths;
  est.seed = seed;
  est.mean = sum / static_cast<double>(n);
  const double var =
      std::max(0.0, (sumsq - sum * sum / static_cast<double>(n)) /
                        static_cast<double>(n - 1));
  est.std_error = std::sqrt(var / static_cast<double>(n));
  return est;
}

long long required_run(double window, double h) {
  return static_cast<long long>(std::ceil(window / h - 1e-9));
}

}  // namespace

void PathConfig::validate() const {
  if (paths < 100) throw std::domain_error("PathConfig: paths must be >= 100");
  if (steps_per_unit_time < 100)
    throw std::domain_error("PathConfig: steps_per_unit_time must be >= 100");
  if (!(horizon > 0.0))
    throw std::domain_error("PathConfig: horizon must be > 0");
}

std::vector<ExitSample> sample_excursion_exit(const ExcursionSpec& spec,
                                              const PathConfig& config) {
  spec.validate();
  config.validate();
  const double h = 1.0 / config.steps_per_unit_time;
  const double sh = std::sqrt(h);
  const double b = spec.b;
  const long long need_first =
      spec.b > 0.0 ? required_run(spec.remaining, h)
                   : required_run(spec.window, h);
  const long long need_reset = required_run(spec.window, h);
  const long long n_steps =
      static_cast<long long>(std::ceil(config.horizon / h - 1e-9));

  std::vector<ExitSample> out(static_cast<std::size_t>(config.paths));
  run_blocks<char>(config.paths, [&](long long begin, long long end, char&) {
    for (long long p = begin; p < end; ++p) {
      auto rng = make_path_rng(config.seed, static_cast<std::uint64_t>(p));
      double w = 0.0;
      long long run = 0;
      bool first = spec.b > 0.0;  // start inside an excursion only when b > 0
      ExitSample s;
      s.truncated = true;
      for (long long k = 1; k <= n_steps; ++k) {
        w += sh * standard_normal(rng);
        if (w >= b) {
          run = 0;
          first = false;
        } else if (++run >= (first ? need_first : need_reset)) {
          s.age_time = static_cast<double>(k) * h;
          s.position = w;
          s.truncated = false;
          break;
        }
      }
      if (s.truncated) {
        s.age_time = config.horizon;
        s.position = w;
      }
      out[static_cast<std::size_t>(p)] = s;
    }
  });
  return out;
}

namespace {

ComplexMcEstimate complex_estimate(std::span<const Complex> values,
                                   const PathConfig& config, double bound) {
  double sr = 0, si = 0, sr2 = 0, si2 = 0;
  for (const Complex& v : values) {
    sr += v.real();
    si += v.imag();
    sr2 += v.real() * v.real();
    si2 += v.imag() * v.imag();
  }
  const double n = static_cast<double>(values.size());
  ComplexMcEstimate est;
  est.paths = static_cast<long long>(values.size());
  est.seed = config.seed;
  est.mean = Complex(sr / n, si / n);
  est.std_error_re =
      std::sqrt(std::max(0.0, (sr2 - sr * sr / n) / (n - 1)) / n);
  est.std_error_im =
      std::sqrt(std::max(0.0, (si2 - si * si / n) / (n - 1)) / n);
  est.truncation_bound = bound;
  return est;
}

void require_horizon(Complex z, double horizon) {
  if (!(z.real() > 0.0))
    throw std::domain_error("mc transform estimate: requires Re z > 0");
  if (z.real() * horizon < 20.0)
    throw std::domain_error(
        "mc transform estimate: config error, horizon * Re z must be >= 20 "
        "(truncation bias budget)");
}

}  // namespace

ComplexMcEstimate mc_exit_time_transform(std::span<const ExitSample> samples,
                                         Complex z, const PathConfig& config) {
  require_horizon(z, config.horizon);
  std::vector<Complex> vals(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    vals[i] = std::exp(-z * samples[i].age_time);  // truncated: age == horizon
  return complex_estimate(vals, config, std::exp(-z.real() * config.horizon));
}

ComplexMcEstimate mc_exit_time_transform(const ExcursionSpec& spec, Complex z,
                                         const PathConfig& config) {
  require_horizon(z, config.horizon);
  const auto samples = sample_excursion_exit(spec, config);
  return mc_exit_time_transform(samples, z, config);
}

ComplexMcEstimate mc_hb_lemma_estimate(std::span<const ExitSample> samples,
                                       double y, Complex z,
                                       const PathConfig& config) {
  require_horizon(z, config.horizon);
  const Complex s = std::sqrt(2.0 * z);
  std::vector<Complex> vals(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].truncated) {
      vals[i] = 0.0;  // dropped tail, bounded by the recorded truncation bound
    } else {
      vals[i] = std::exp(-z * samples[i].age_time) *
                std::exp(-std::abs(samples[i].position - y) * s) / s;
    }
  }
  return complex_estimate(
      vals, config, std::exp(-z.real() * config.horizon) / std::abs(s));
}

ComplexMcEstimate mc_hb_lemma_estimate(const ExcursionSpec& spec, double y,
                                       Complex z, const PathConfig& config) {
  require_horizon(z, config.horizon);
  const auto samples = sample_excursion_exit(spec, config);
  return mc_hb_lemma_estimate(samples, y, z, config);
}

namespace {

struct GbmGrid {
  long long n_steps;
  double h;
  double drift;
  double vol;
  long long need_first;
  long long need_reset;
  // thresholds for the every-other-point grid, in coarse steps
  long long need_first_coarse;
  long long need_reset_coarse;
};

GbmGrid make_grid(const MarketParams& m, const ParisianContract& c,
                  int steps_per_unit_time) {
  GbmGrid g;
  const double tau = c.time_to_maturity;
  g.n_steps = static_cast<long long>(
      std::ceil(tau * steps_per_unit_time - 1e-9));
  g.h = tau / static_cast<double>(g.n_steps);
  g.drift = (m.rate - m.dividend - 0.5 * m.volatility * m.volatility) * g.h;
  g.vol = m.volatility * std::sqrt(g.h);
  const bool in_excursion = m.spot < c.barrier;
  const double first_window =
      in_excursion ? c.window - c.elapsed_age : c.window;
  g.need_first = required_run(first_window, g.h);
  g.need_reset = required_run(c.window, g.h);
  g.need_first_coarse = required_run(first_window, 2.0 * g.h);
  g.need_reset_coarse = required_run(c.window, 2.0 * g.h);
  return g;
}

// One GBM path on the fine grid; the clock is also evaluated on the
// every-other-point coarse grid when `coarse` is non-null.
struct PathOutcome {
  bool knocked_fine = false;
  bool knocked_coarse = false;
  double terminal_spot = 0.0;
};

template <bool kWithCoarse>
PathOutcome run_gbm_path(const GbmGrid& g, double log_spot, double log_barrier,
                         bool start_below, Xoshiro256pp& rng, bool mirror) {
  double ls = log_spot;
  long long run_f = 0;
  bool first_f = start_below;
  bool ki_f = false;
  [[maybe_unused]] long long run_c = 0;
  [[maybe_unused]] bool first_c = start_below;
  [[maybe_unused]] bool ki_c = false;
  for (long long k = 1; k <= g.n_steps; ++k) {
    const double z = standard_normal(rng);
    ls += g.drift + g.vol * (mirror ? -z : z);
    const bool below = ls < log_barrier;
    if (below) {
      if (++run_f >= (first_f ? g.need_first : g.need_reset)) ki_f = true;
    } else {
      run_f = 0;
      first_f = false;
    }
    if constexpr (kWithCoarse) {
      if (k % 2 == 0) {
        if (below) {
          if (++run_c >= (first_c ? g.need_first_coarse : g.need_reset_coarse))
            ki_c = true;
        } else {
          run_c = 0;
          first_c = false;
        }
      }
    }
  }
  return {ki_f, ki_c, std::exp(ls)};
}

}  // namespace

void simulate_knock_in(
    const MarketParams& market, const ParisianContract& contract,
    const PathConfig& config,
    const std::function<void(bool, double)>& sink) {
  validate(market, contract);
  config.validate();
  const GbmGrid g = make_grid(market, contract, config.steps_per_unit_time);
  const double ls0 = std::log(market.spot);
  const double lb = contract.barrier > 0.0
                        ? std::log(contract.barrier)
                        : -std::numeric_limits<double>::infinity();
  const bool start_below = market.spot < contract.barrier;
  for (long long p = 0; p < config.paths; ++p) {
    const bool mirror = config.antithetic && (p % 2 == 1);
    auto rng = make_path_rng(config.seed,
                             static_cast<std::uint64_t>(config.antithetic ? p / 2 : p));
    const auto o = run_gbm_path<false>(g, ls0, lb, start_below, rng, mirror);
    sink(o.knocked_fine, o.terminal_spot);
  }
}

McEstimate mc_price(const MarketParams& market, const ParisianContract& contract,
                    const PathConfig& config) {
  validate(market, contract);
  config.validate();
  const GbmGrid g = make_grid(market, contract, config.steps_per_unit_time);
  const double ls0 = std::log(market.spot);
  const double lb = contract.barrier > 0.0
                        ? std::log(contract.barrier)
                        : -std::numeric_limits<double>::infinity();
  const bool start_below = market.spot < contract.barrier;
  const double disc = std::exp(-market.rate * contract.time_to_maturity);
  const double strike = contract.strike;

  if (config.antithetic) {
    const long long pairs = config.paths / 2;
    auto slots = run_blocks<MomentAcc>(
        pairs, [&](long long begin, long long end, MomentAcc& acc) {
          for (long long p = begin; p < end; ++p) {
            double pay = 0.0;
            for (int half = 0; half < 2; ++half) {
              auto rng = make_path_rng(config.seed, static_cast<std::uint64_t>(p));
              const auto o = run_gbm_path<false>(g, ls0, lb, start_below, rng,
                                                 half == 1);
              if (o.knocked_fine)
                pay += disc * std::max(o.terminal_spot - strike, 0.0);
            }
            acc.add(0.5 * pay);
          }
        });
    return finish(slots, config.seed, config.paths);
  }

  auto slots = run_blocks<MomentAcc>(
      config.paths, [&](long long begin, long long end, MomentAcc& acc) {
        for (long long p = begin; p < end; ++p) {
          auto rng = make_path_rng(config.seed, static_cast<std::uint64_t>(p));
          const auto o = run_gbm_path<false>(g, ls0, lb, start_below, rng, false);
          acc.add(o.knocked_fine ? disc * std::max(o.terminal_spot - strike, 0.0)
                                 : 0.0);
        }
      });
  return finish(slots, config.seed, config.paths);
}

RefinedPriceEstimate mc_price_refined(const MarketParams& market,
                                      const ParisianContract& contract,
                                      const PathConfig& config) {
  validate(market, contract);
  config.validate();
  PathConfig fine_cfg = config;
  fine_cfg.steps_per_unit_time = 2 * config.steps_per_unit_time;
  const GbmGrid g = make_grid(market, contract, fine_cfg.steps_per_unit_time);
  if (g.n_steps % 2 != 0)
    throw std::logic_error("mc_price_refined: fine grid must halve evenly");
  const double ls0 = std::log(market.spot);
  const double lb = contract.barrier > 0.0
                        ? std::log(contract.barrier)
                        : -std::numeric_limits<double>::infinity();
  const bool start_below = market.spot < contract.barrier;
  const double disc = std::exp(-market.rate * contract.time_to_maturity);
  const double strike = contract.strike;

  struct PairAcc {
    MomentAcc fine, coarse;
  };
  auto slots = run_blocks<PairAcc>(
      config.paths, [&](long long begin, long long end, PairAcc& acc) {
        for (long long p = begin; p < end; ++p) {
          auto rng = make_path_rng(config.seed, static_cast<std::uint64_t>(p));
          const auto o = run_gbm_path<true>(g, ls0, lb, start_below, rng, false);
          const double pay = disc * std::max(o.terminal_spot - strike, 0.0);
          acc.fine.add(o.knocked_fine ? pay : 0.0);
          acc.coarse.add(o.knocked_coarse ? pay : 0.0);
        }
      });
  std::vector<MomentAcc> fs, cs;
  fs.reserve(slots.size());
  cs.reserve(slots.size());
  for (const auto& s : slots) {
    fs.push_back(s.fine);
    cs.push_back(s.coarse);
  }
  RefinedPriceEstimate out;
  out.fine = finish(fs, config.seed, config.paths);
  out.coarse = finish(cs, config.seed, config.paths);
  out.bias_gap = std::abs(out.fine.mean - out.coarse.mean);
  return out;
}

}  // namespace parisian

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace parisian {

/// Numerical failure (quadrature non-convergence, inverter divergence).
/// Carries the best estimate reached and, when available, the partial sums
/// of the diverging series so the caller can inspect them.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double achieved_tolerance,
                 double requested_tolerance, double best_estimate = 0.0,
                 std::vector<double> partial_sums = {})
      : std::runtime_error(what),
        achieved_(achieved_tolerance),
        requested_(requested_tolerance),
        best_(best_estimate),
        partials_(std::move(partial_sums)) {}

  double achieved_tolerance() const { return achieved_; }
  double requested_tolerance() const { return requested_; }
  double best_estimate() const { return best_; }
  const std::vector<double>& partial_sums() const { return partials_; }

 private:
  double achieved_;
  double requested_;
  double best_;
  std::vector<double> partials_;
};

}  // namespace parisian

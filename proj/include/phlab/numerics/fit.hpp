#pragma once

#include <span>

namespace phlab {

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 1.0;
};

/// Ordinary least squares y = intercept + slope x. r_squared is 1 when the
/// ys are constant (zero total variance).
LinearFit fit_linear(std::span<const double> xs, std::span<const double> ys);

struct LogLinearFit {
  double rate = 0.0;
  double amplitude = 0.0;
  double r_squared = 1.0;
};

/// Least squares fit of log y = log amplitude - rate x. Needs at least three
/// samples, all ys > 0, and not all xs equal.
LogLinearFit fit_log_linear(std::span<const double> xs, std::span<const double> ys);

}  // namespace phlab

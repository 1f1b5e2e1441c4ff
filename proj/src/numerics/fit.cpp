#include "phlab/numerics/fit.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "phlab/error.hpp"

namespace phlab {

LinearFit fit_linear(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::length_mismatch, "xs/ys length mismatch");
  const std::size_t n = xs.size();
  if (n < 2) throw Error(ErrorKind::invalid_parameter, "linear fit needs at least 2 samples");
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxx += dx * dx;
    sxy += dx * dy;
    syy += dy * dy;
  }
  if (!(sxx > 0.0)) throw Error(ErrorKind::degenerate_xs, "all xs are equal");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  if (syy > 0.0) {
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = ys[i] - (fit.intercept + fit.slope * xs[i]);
      ss_res += r * r;
    }
    fit.r_squared = std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
  }
  return fit;
}

LogLinearFit fit_log_linear(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw Error(ErrorKind::length_mismatch, "xs/ys length mismatch");
  if (xs.size() < 3) throw Error(ErrorKind::invalid_parameter, "decay fit needs at least 3 samples");
  std::vector<double> logs(ys.size());
  for (std::size_t i = 0; i < ys.size(); ++i) {
    if (!(ys[i] > 0.0) || !std::isfinite(ys[i])) {
      throw Error(ErrorKind::nonpositive_sample, "sample must be positive", i);
    }
    logs[i] = std::log(ys[i]);
  }
  const LinearFit lin = fit_linear(xs, logs);
  return LogLinearFit{-lin.slope, std::exp(lin.intercept), lin.r_squared};
}

}  // namespace phlab

#include "phlab/numerics/interpolation.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "phlab/error.hpp"

namespace phlab {
namespace {

double sign(double v) { return (v > 0.0) - (v < 0.0); }

double end_slope(double h0, double h1, double d0, double d1) {
  double s = ((2.0 * h0 + h1) * d0 - h0 * d1) / (h0 + h1);
  if (sign(s) != sign(d0)) {
    s = 0.0;
  } else if (sign(d0) != sign(d1) && std::abs(s) > 3.0 * std::abs(d0)) {
    s = 3.0 * d0;
  }
  return s;
}

}  // namespace

MonotoneCubic::MonotoneCubic(std::span<const double> nodes, std::span<const double> values)
    : x_(nodes.begin(), nodes.end()), y_(values.begin(), values.end()) {
  const std::size_t n = x_.size();
  if (values.size() != n) throw Error(ErrorKind::length_mismatch, "nodes/values length mismatch");
  if (n < 2) throw Error(ErrorKind::invalid_parameter, "interpolation needs at least 2 nodes");
  for (std::size_t j = 1; j < n; ++j) {
    if (!(x_[j] > x_[j - 1])) {
      throw Error(ErrorKind::invalid_parameter, "interpolation nodes must increase strictly", j);
    }
  }
  range_tol_ = 1e-12 * std::max(1.0, std::abs(x_.back() - x_.front()));

  std::vector<double> h(n - 1), delta(n - 1);
  for (std::size_t k = 0; k + 1 < n; ++k) {
    h[k] = x_[k + 1] - x_[k];
    delta[k] = (y_[k + 1] - y_[k]) / h[k];
  }
  slopes_.assign(n, 0.0);
  if (n == 2) {
    slopes_[0] = slopes_[1] = delta[0];
    return;
  }
  for (std::size_t k = 1; k + 1 < n; ++k) {
    const double a = delta[k - 1];
    const double b = delta[k];
    if (a * b <= 0.0) {
      slopes_[k] = 0.0;
    } else {
      const double w1 = 2.0 * h[k] + h[k - 1];
      const double w2 = h[k] + 2.0 * h[k - 1];
      slopes_[k] = (w1 + w2) / (w1 / a + w2 / b);
    }
  }
  slopes_[0] = end_slope(h[0], h[1], delta[0], delta[1]);
  slopes_[n - 1] = end_slope(h[n - 2], h[n - 3], delta[n - 2], delta[n - 3]);
}

std::size_t MonotoneCubic::locate(double q) const {
  if (!(q >= x_.front() - range_tol_ && q <= x_.back() + range_tol_)) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "query %.17g outside [%.17g, %.17g]", q, x_.front(),
                  x_.back());
    throw Error(ErrorKind::out_of_range, buf);
  }
  auto it = std::upper_bound(x_.begin(), x_.end(), q);
  std::size_t k = it == x_.begin() ? 0 : static_cast<std::size_t>(it - x_.begin()) - 1;
  return std::min(k, x_.size() - 2);
}

double MonotoneCubic::value(double q) const {
  const std::size_t k = locate(q);
  const double h = x_[k + 1] - x_[k];
  const double t = std::clamp((q - x_[k]) / h, 0.0, 1.0);
  if (t == 0.0) return y_[k];
  if (t == 1.0) return y_[k + 1];
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h00 = 2.0 * t3 - 3.0 * t2 + 1.0;
  const double h10 = t3 - 2.0 * t2 + t;
  const double h01 = -2.0 * t3 + 3.0 * t2;
  const double h11 = t3 - t2;
  return h00 * y_[k] + h * h10 * slopes_[k] + h01 * y_[k + 1] + h * h11 * slopes_[k + 1];
}

double MonotoneCubic::derivative(double q) const {
  const std::size_t k = locate(q);
  const double h = x_[k + 1] - x_[k];
  const double t = std::clamp((q - x_[k]) / h, 0.0, 1.0);
  const double t2 = t * t;
  const double d00 = (6.0 * t2 - 6.0 * t) / h;
  const double d10 = 3.0 * t2 - 4.0 * t + 1.0;
  const double d01 = (-6.0 * t2 + 6.0 * t) / h;
  const double d11 = 3.0 * t2 - 2.0 * t;
  return d00 * y_[k] + d10 * slopes_[k] + d01 * y_[k + 1] + d11 * slopes_[k + 1];
}

std::vector<double> MonotoneCubic::values_at(std::span<const double> queries) const {
  std::vector<double> out(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) out[i] = value(queries[i]);
  return out;
}

std::vector<double> MonotoneCubic::derivatives_at(std::span<const double> queries) const {
  std::vector<double> out(queries.size());
  for (std::size_t i = 0; i < queries.size(); ++i) out[i] = derivative(queries[i]);
  return out;
}

std::vector<double> interp_monotone(const Grid1D& src_grid, std::span<const double> src_values,
                                    std::span<const double> query_points) {
  if (src_values.size() != src_grid.size()) {
    throw Error(ErrorKind::length_mismatch, "source values do not match grid");
  }
  return MonotoneCubic(src_grid.nodes(), src_values).values_at(query_points);
}

}  // namespace phlab

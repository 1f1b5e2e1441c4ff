#include "phlab/numerics/quadrature.hpp"

#include <cmath>

#include "phlab/error.hpp"

namespace phlab {
namespace {

void check_samples(const Grid1D& grid, std::span<const double> values) {
  if (values.size() != grid.size()) {
    throw Error(ErrorKind::length_mismatch, "values length " + std::to_string(values.size()) +
                                                " does not match grid count " +
                                                std::to_string(grid.size()));
  }
  for (std::size_t j = 0; j < values.size(); ++j) {
    if (!std::isfinite(values[j])) {
      throw Error(ErrorKind::non_finite_input, "non-finite sample", j);
    }
  }
}

}  // namespace

double trapezoid_integral(const Grid1D& grid, std::span<const double> values) {
  check_samples(grid, values);
  const auto x = grid.nodes();
  double sum = 0.0;
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    sum += 0.5 * (x[j + 1] - x[j]) * (values[j] + values[j + 1]);
  }
  return sum;
}

std::vector<double> cumulative_trapezoid(const Grid1D& grid, std::span<const double> values) {
  check_samples(grid, values);
  const auto x = grid.nodes();
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    out[j + 1] = out[j] + 0.5 * (x[j + 1] - x[j]) * (values[j] + values[j + 1]);
  }
  return out;
}

std::vector<double> cumulative_hermite(const Grid1D& grid, std::span<const double> values,
                                       std::span<const double> slopes) {
  check_samples(grid, values);
  check_samples(grid, slopes);
  const auto x = grid.nodes();
  std::vector<double> out(x.size(), 0.0);
  for (std::size_t j = 0; j + 1 < x.size(); ++j) {
    const double h = x[j + 1] - x[j];
    out[j + 1] = out[j] + 0.5 * h * (values[j] + values[j + 1]) +
                 h * h * (slopes[j] - slopes[j + 1]) / 12.0;
  }
  return out;
}

}  // namespace phlab

#pragma once

#include <span>
#include <vector>

#include "phlab/numerics/grid.hpp"

namespace phlab {

/// Piecewise cubic Hermite interpolant with Fritsch–Butland slopes
/// (weighted harmonic means; zero at local extrema). Monotone data yields a
/// monotone interpolant, nodes are reproduced exactly and affine data is
/// reproduced everywhere. Queries outside the node range are rejected.
class MonotoneCubic {
 public:
  MonotoneCubic(std::span<const double> nodes, std::span<const double> values);

  double value(double q) const;
  double derivative(double q) const;
  std::vector<double> values_at(std::span<const double> queries) const;
  std::vector<double> derivatives_at(std::span<const double> queries) const;

  std::span<const double> slopes() const noexcept { return slopes_; }
  double lo() const noexcept { return x_.front(); }
  double hi() const noexcept { return x_.back(); }

 private:
  std::size_t locate(double q) const;

  std::vector<double> x_;
  std::vector<double> y_;
  std::vector<double> slopes_;
  double range_tol_;
};

std::vector<double> interp_monotone(const Grid1D& src_grid, std::span<const double> src_values,
                                    std::span<const double> query_points);

}  // namespace phlab

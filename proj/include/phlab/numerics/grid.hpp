#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace phlab {

/// Strictly increasing node set starting at 0, used for both the physical
/// coordinate y and the stream function psi.
class Grid1D {
 public:
  static constexpr std::size_t min_count = 8;

  /// nodes[j] = length * (j / (count - 1))^exponent.
  static Grid1D graded(double length, std::size_t count, double exponent);

  /// Arbitrary node set; must start at 0 and increase strictly.
  static Grid1D from_nodes(std::vector<double> nodes);

  std::span<const double> nodes() const noexcept { return nodes_; }
  double operator[](std::size_t j) const noexcept { return nodes_[j]; }
  std::size_t size() const noexcept { return nodes_.size(); }
  double back() const noexcept { return nodes_.back(); }
  double length() const noexcept { return nodes_.back() - nodes_.front(); }

  /// Set only for grids built by graded().
  std::optional<double> grading_exponent() const noexcept { return exponent_; }

  /// Composite-trapezoid weights; nonnegative and summing to length().
  std::vector<double> trapezoid_weights() const;

  bool same_nodes(const Grid1D& other) const noexcept;

 private:
  explicit Grid1D(std::vector<double> nodes, std::optional<double> exponent);

  std::vector<double> nodes_;
  std::optional<double> exponent_;
};

inline Grid1D make_graded_grid(double length, std::size_t count, double exponent) {
  return Grid1D::graded(length, count, exponent);
}

}  // namespace phlab

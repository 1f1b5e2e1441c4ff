#include "phlab/numerics/grid.hpp"

#include <cmath>
#include <string>

#include "phlab/error.hpp"

namespace phlab {

Grid1D::Grid1D(std::vector<double> nodes, std::optional<double> exponent)
    : nodes_(std::move(nodes)), exponent_(exponent) {}

Grid1D Grid1D::graded(double length, std::size_t count, double exponent) {
  if (!(length > 0.0) || !std::isfinite(length)) {
    throw Error(ErrorKind::invalid_parameter, "grid length must be positive and finite");
  }
  if (count < min_count) {
    throw Error(ErrorKind::invalid_parameter,
                "grid count must be at least " + std::to_string(min_count));
  }
  if (!(exponent >= 1.0) || !std::isfinite(exponent)) {
    throw Error(ErrorKind::invalid_parameter, "grading exponent must be >= 1");
  }
  std::vector<double> nodes(count);
  const double last = static_cast<double>(count - 1);
  for (std::size_t j = 0; j < count; ++j) {
    nodes[j] = length * std::pow(static_cast<double>(j) / last, exponent);
  }
  nodes.back() = length;
  return Grid1D(std::move(nodes), exponent);
}

Grid1D Grid1D::from_nodes(std::vector<double> nodes) {
  if (nodes.size() < min_count) {
    throw Error(ErrorKind::invalid_parameter,
                "grid count must be at least " + std::to_string(min_count));
  }
  if (nodes.front() != 0.0) {
    throw Error(ErrorKind::invalid_parameter, "grid must start at 0");
  }
  for (std::size_t j = 1; j < nodes.size(); ++j) {
    if (!(nodes[j] > nodes[j - 1]) || !std::isfinite(nodes[j])) {
      throw Error(ErrorKind::invalid_parameter, "grid nodes must increase strictly", j);
    }
  }
  return Grid1D(std::move(nodes), std::nullopt);
}

std::vector<double> Grid1D::trapezoid_weights() const {
  const std::size_t n = nodes_.size();
  std::vector<double> w(n, 0.0);
  for (std::size_t j = 0; j + 1 < n; ++j) {
    const double h = nodes_[j + 1] - nodes_[j];
    w[j] += 0.5 * h;
    w[j + 1] += 0.5 * h;
  }
  return w;
}

bool Grid1D::same_nodes(const Grid1D& other) const noexcept {
  return nodes_ == other.nodes_;
}

}  // namespace phlab

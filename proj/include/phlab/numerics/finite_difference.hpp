#pragma once

#include <span>
#include <vector>

#include "phlab/numerics/grid.hpp"

namespace phlab {

/// First derivative: three-point stencils in the interior, one-sided
/// second-order stencils at both ends. Exact for quadratics.
std::vector<double> fd_first(const Grid1D& grid, std::span<const double> values);

/// Second derivative: three-point stencils in the interior, one-sided
/// four-point stencils at both ends. Exact for quadratics.
std::vector<double> fd_second(const Grid1D& grid, std::span<const double> values);

/// Weights w such that sum_i w[i] f(nodes[i]) approximates f^(order)(at),
/// by Fornberg's recursion. Requires nodes.size() > order.
std::vector<double> fornberg_weights(double at, std::span<const double> nodes, int order);

}  // namespace phlab

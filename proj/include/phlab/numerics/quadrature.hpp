#pragma once

#include <span>
#include <vector>

#include "phlab/numerics/grid.hpp"

namespace phlab {

/// Composite trapezoid rule on the (possibly nonuniform) grid nodes.
double trapezoid_integral(const Grid1D& grid, std::span<const double> values);

/// Running trapezoid integral; result[0] = 0.
std::vector<double> cumulative_trapezoid(const Grid1D& grid, std::span<const double> values);

/// Running integral of the cubic Hermite interpolant through (nodes, values)
/// with nodal slopes `slopes`: the trapezoid rule plus the end correction
/// h^2 (d_j - d_{j+1}) / 12 per cell. Fourth order for smooth data.
std::vector<double> cumulative_hermite(const Grid1D& grid, std::span<const double> values,
                                       std::span<const double> slopes);

}  // namespace phlab

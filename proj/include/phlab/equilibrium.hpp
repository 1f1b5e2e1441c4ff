#pragma once

#include <vector>

#include "phlab/numerics/grid.hpp"

namespace phlab {

// Hartmann layer: u = 1 - e^{-y}, v = 0, with b normalized by b(0) = 0,
// b(inf) = 1 and b_y = 1 - u.

double hartmann_u(double y);
double hartmann_u_y(double y);
double hartmann_u_yy(double y);

/// Stream function of the Hartmann layer, y + e^{-y} - 1, evaluated
/// without cancellation for small y.
double hartmann_psi_of_y(double y);

inline constexpr double default_psi_inverse_tol = 1e-15;

/// Inverse of hartmann_psi_of_y: |psi(result) - psi| <= tol (or the root is
/// resolved to adjacent doubles). Newton starts from sqrt(2 psi) near the
/// wall, where psi'(0) = 0.
double hartmann_y_of_psi(double psi, double tol = default_psi_inverse_tol);

/// u as a function of psi; ~ sqrt(2 psi) near the wall.
double hartmann_u_of_psi(double psi);

double hartmann_b(double y);
double hartmann_b_y(double y);

/// Hartmann layer sampled on a psi grid.
struct EquilibriumOnGrid {
  std::vector<double> y;  // y(psi_j)
  std::vector<double> u;  // u_bar(psi_j)
  std::vector<double> w;  // u_bar^2
};

EquilibriumOnGrid equilibrium_on_psi_grid(const Grid1D& grid_psi);

}  // namespace phlab

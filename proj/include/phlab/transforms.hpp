#pragma once

#include <vector>

#include "phlab/numerics/grid.hpp"

namespace phlab {

/// Physical-variable solution at one station x.
struct PhysState {
  double x = 0.0;
  Grid1D grid_y;
  std::vector<double> u;
  std::vector<double> v;  // empty when not reconstructed
  std::vector<double> b;
  double eps = 0.0;
};

/// von-Mises solution at one station: w = u^2 on a psi grid.
struct VmState {
  double x = 0.0;
  Grid1D grid_psi;
  std::vector<double> w;
  double far_value = 1.0;
};

/// Stream function psi_j = int_0^{y_j} u on the state's own y-grid
/// (trapezoid with Hermite end corrections).
std::vector<double> stream_function(const PhysState& phys);

VmState to_von_mises(const PhysState& phys, const Grid1D& target_grid);

/// y(psi_j) = int_0^psi dpsi'/u, integrated in t = sqrt(psi). When u
/// vanishes at the wall the first cell uses the model u ~ s sqrt(psi).
std::vector<double> physical_coordinate(const Grid1D& grid_psi, const std::vector<double>& u);

/// u on target_grid_y and b = int_0^y (1 - u). When `previous` is given the
/// normal velocity v = -int_0^y u_x is rebuilt from the backward difference
/// between the two stations.
PhysState from_von_mises(const VmState& vm, const Grid1D& target_grid_y,
                         const VmState* previous = nullptr);

/// Magnetic component b = int_0^y (1 + eps - u), normalized by b(0) = 0.
std::vector<double> recover_b(const Grid1D& grid_y, const std::vector<double>& u, double eps = 0.0);

/// q = v/u from two consecutive physical stations on the same grid.
std::vector<double> quotient_field(const PhysState& phys_prev, const PhysState& phys_curr,
                                   double dx);

/// v = -int_0^y (u_curr - u_prev)/dx.
std::vector<double> normal_velocity(const Grid1D& grid_y, const std::vector<double>& u_prev,
                                    const std::vector<double>& u_curr, double dx);

/// u, u_y, u_yy of a von-Mises station on a physical grid.
struct PhysicalProfile {
  Grid1D grid_y;
  std::vector<double> u;
  std::vector<double> u_y;
  std::vector<double> u_yy;
};

/// Second derivative from the equation itself, u_yy = w_x/2 - (1 - u),
/// with w_x the difference quotient against `neighbor` (an adjacent
/// station). u_y is integrated inward from the far end. All three fields
/// are taken to target_grid_y by monotone cubic interpolation.
PhysicalProfile physical_profile(const VmState& vm, const VmState& neighbor,
                                 const Grid1D& target_grid_y);

}  // namespace phlab

#include "phlab/transforms.hpp"

#include <cmath>

#include "phlab/error.hpp"
#include "phlab/numerics/finite_difference.hpp"
#include "phlab/numerics/interpolation.hpp"
#include "phlab/numerics/quadrature.hpp"

namespace phlab {
namespace {

constexpr double range_slack = 1e-12;

void require_fits(double target_end, double source_end, const char* what) {
  if (target_end > source_end * (1.0 + range_slack) + range_slack) {
    throw Error(ErrorKind::target_out_of_range,
                std::string(what) + ": target grid ends at " + std::to_string(target_end) +
                    " beyond the source range " + std::to_string(source_end));
  }
}

// Query points clipped onto the source range (the last target node may sit
// a rounding error beyond it).
std::vector<double> clipped(std::span<const double> q, double hi) {
  std::vector<double> out(q.begin(), q.end());
  for (double& x : out) x = std::min(x, hi);
  return out;
}

std::vector<double> sqrt_field(const std::vector<double>& w) {
  std::vector<double> u(w.size());
  u[0] = std::sqrt(std::max(w[0], 0.0));
  for (std::size_t j = 1; j < w.size(); ++j) {
    if (!(w[j] > 0.0)) {
      throw Error(ErrorKind::nonpositive_w, "w must be positive away from the wall", j);
    }
    u[j] = std::sqrt(w[j]);
  }
  return u;
}

std::vector<double> u_on_target(const VmState& vm, const Grid1D& target) {
  const std::vector<double> u = sqrt_field(vm.w);
  const std::vector<double> y = physical_coordinate(vm.grid_psi, u);
  require_fits(target.back(), y.back(), "from_von_mises");
  MonotoneCubic interp(y, u);
  return interp.values_at(clipped(target.nodes(), y.back()));
}

}  // namespace

std::vector<double> stream_function(const PhysState& phys) {
  if (phys.u.size() != phys.grid_y.size()) {
    throw Error(ErrorKind::length_mismatch, "stream_function: u does not match the grid");
  }
  MonotoneCubic interp(phys.grid_y.nodes(), phys.u);
  std::vector<double> slopes(interp.slopes().begin(), interp.slopes().end());
  return cumulative_hermite(phys.grid_y, phys.u, slopes);
}

VmState to_von_mises(const PhysState& phys, const Grid1D& target_grid) {
  const std::size_t n = phys.u.size();
  if (n != phys.grid_y.size()) throw Error(ErrorKind::length_mismatch, "to_von_mises: u does not match the grid");
  for (std::size_t j = 1; j < n; ++j) {
    if (!(phys.u[j] > 0.0)) {
      throw Error(ErrorKind::nonpositive_u, "to_von_mises: u must be positive on the interior", j);
    }
  }
  const std::vector<double> psi = stream_function(phys);
  require_fits(target_grid.back(), psi.back(), "to_von_mises");

  std::vector<double> w2(n);
  for (std::size_t j = 0; j < n; ++j) w2[j] = phys.u[j] * phys.u[j];
  MonotoneCubic interp(psi, w2);
  std::vector<double> w = interp.values_at(clipped(target_grid.nodes(), psi.back()));
  return VmState{phys.x, target_grid, std::move(w), w2.back()};
}

std::vector<double> physical_coordinate(const Grid1D& grid_psi, const std::vector<double>& u) {
  const std::size_t n = grid_psi.size();
  if (u.size() != n) throw Error(ErrorKind::length_mismatch, "physical_coordinate: length mismatch");
  std::vector<double> t(n), f(n);
  for (std::size_t j = 0; j < n; ++j) t[j] = std::sqrt(grid_psi[j]);
  for (std::size_t j = 1; j < n; ++j) {
    if (!(u[j] > 0.0)) throw Error(ErrorKind::nonpositive_w, "physical_coordinate: u <= 0", j);
    f[j] = 2.0 * t[j] / u[j];
  }
  // dy = 2t dt / u; at a degenerate wall u ~ s t so the integrand tends to 2/s
  f[0] = u[0] > 0.0 ? 0.0 : f[1];
  std::vector<double> y(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) y[j] = y[j - 1] + 0.5 * (t[j] - t[j - 1]) * (f[j] + f[j - 1]);
  return y;
}

PhysState from_von_mises(const VmState& vm, const Grid1D& target_grid_y, const VmState* previous) {
  if (vm.w.size() != vm.grid_psi.size()) throw Error(ErrorKind::length_mismatch, "from_von_mises: w does not match the grid");
  std::vector<double> u = u_on_target(vm, target_grid_y);
  std::vector<double> v;
  if (previous != nullptr) {
    const double dx = vm.x - previous->x;
    if (!(dx > 0.0)) {
      throw Error(ErrorKind::missing_station, "from_von_mises: previous station must precede the current one");
    }
    const std::vector<double> u_prev = u_on_target(*previous, target_grid_y);
    v = normal_velocity(target_grid_y, u_prev, u, dx);
  }
  std::vector<double> b = recover_b(target_grid_y, u);
  return PhysState{vm.x, target_grid_y, std::move(u), std::move(v), std::move(b), 0.0};
}

std::vector<double> recover_b(const Grid1D& grid_y, const std::vector<double>& u, double eps) {
  if (u.size() != grid_y.size()) throw Error(ErrorKind::length_mismatch, "recover_b: length mismatch");
  std::vector<double> deficit(u.size());
  for (std::size_t j = 0; j < u.size(); ++j) deficit[j] = 1.0 + eps - u[j];
  MonotoneCubic interp(grid_y.nodes(), deficit);
  std::vector<double> slopes(interp.slopes().begin(), interp.slopes().end());
  return cumulative_hermite(grid_y, deficit, slopes);
}

std::vector<double> normal_velocity(const Grid1D& grid_y, const std::vector<double>& u_prev,
                                    const std::vector<double>& u_curr, double dx) {
  if (!(dx > 0.0)) throw Error(ErrorKind::invalid_parameter, "normal_velocity: dx must be positive");
  if (u_prev.size() != grid_y.size() || u_curr.size() != grid_y.size()) {
    throw Error(ErrorKind::length_mismatch, "normal_velocity: length mismatch");
  }
  std::vector<double> ux(u_curr.size());
  for (std::size_t j = 0; j < ux.size(); ++j) ux[j] = (u_curr[j] - u_prev[j]) / dx;
  std::vector<double> v = cumulative_trapezoid(grid_y, ux);
  for (double& x : v) x = -x;
  return v;
}

std::vector<double> quotient_field(const PhysState& phys_prev, const PhysState& phys_curr, double dx) {
  if (!phys_prev.grid_y.same_nodes(phys_curr.grid_y)) {
    throw Error(ErrorKind::grid_mismatch, "quotient_field: stations live on different grids");
  }
  const std::size_t n = phys_curr.u.size();
  for (std::size_t j = 1; j < n; ++j) {
    if (!(phys_curr.u[j] > 0.0)) throw Error(ErrorKind::nonpositive_u, "quotient_field: u <= 0", j);
  }
  const std::vector<double> v = normal_velocity(phys_curr.grid_y, phys_prev.u, phys_curr.u, dx);
  std::vector<double> q(n);
  for (std::size_t j = 1; j < n; ++j) q[j] = v[j] / phys_curr.u[j];
  if (phys_curr.u[0] > 0.0) {
    q[0] = v[0] / phys_curr.u[0];
  } else {
    const double vy = fd_first(phys_curr.grid_y, v)[0];
    const double uy = fd_first(phys_curr.grid_y, phys_curr.u)[0];
    if (!(uy > 0.0)) throw Error(ErrorKind::nonpositive_u, "quotient_field: u_y(0) <= 0", 0);
    q[0] = vy / uy;
  }
  return q;
}

PhysicalProfile physical_profile(const VmState& vm, const VmState& neighbor, const Grid1D& target_grid_y) {
  if (!vm.grid_psi.same_nodes(neighbor.grid_psi)) {
    throw Error(ErrorKind::grid_mismatch, "physical_profile: stations live on different grids");
  }
  const double dx = vm.x - neighbor.x;
  if (dx == 0.0) throw Error(ErrorKind::missing_station, "physical_profile: neighbor is the same station");
  const std::size_t n = vm.w.size();
  const std::vector<double> u = sqrt_field(vm.w);
  const std::vector<double> y = physical_coordinate(vm.grid_psi, u);
  require_fits(target_grid_y.back(), y.back(), "physical_profile");

  std::vector<double> uyy(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double wx = (vm.w[j] - neighbor.w[j]) / dx;
    uyy[j] = 0.5 * wx - (1.0 - u[j]);
  }
  std::vector<double> uy(n);
  const auto& psi = vm.grid_psi;
  uy[n - 1] = 0.5 * (vm.w[n - 1] - vm.w[n - 2]) / (psi[n - 1] - psi[n - 2]);
  for (std::size_t j = n - 1; j-- > 0;) {
    uy[j] = uy[j + 1] - 0.5 * (uyy[j] + uyy[j + 1]) * (y[j + 1] - y[j]);
  }

  const std::vector<double> q = clipped(target_grid_y.nodes(), y.back());
  return PhysicalProfile{target_grid_y, MonotoneCubic(y, u).values_at(q), MonotoneCubic(y, uy).values_at(q),
                         MonotoneCubic(y, uyy).values_at(q)};
}

}  // namespace phlab

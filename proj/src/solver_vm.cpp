#include "phlab/solver_vm.hpp"

#include <cmath>

#include "detail/march.hpp"
#include "detail/picard.hpp"
#include "phlab/error.hpp"
#include "phlab/numerics/tridiagonal.hpp"

namespace phlab {
namespace {

void check_config(const VmStepConfig& cfg) {
  if (!(cfg.dx > 0.0) || !std::isfinite(cfg.dx)) throw Error(ErrorKind::invalid_parameter, "dx must be positive");
  if (!(cfg.picard_tol > 0.0)) throw Error(ErrorKind::invalid_parameter, "picard_tol must be positive");
  if (cfg.picard_max < 1) throw Error(ErrorKind::invalid_parameter, "picard_max must be >= 1");
  if (cfg.stagnation_window < 1) throw Error(ErrorKind::invalid_parameter, "stagnation_window must be >= 1");
}

void check_lengths(std::size_t values, const Grid1D& grid) {
  if (values != grid.size()) throw Error(ErrorKind::length_mismatch, "state does not match its grid");
}

std::vector<double> w_iterate(const std::vector<double>& wn, const std::vector<double>& wm,
                              const detail::SecondDifference& d2, double dx, double far,
                              double floor) {
  const std::size_t n = wn.size();
  TridiagonalSystem sys(n);
  sys.diagonal[0] = 1.0;
  sys.rhs[0] = 0.0;
  sys.diagonal[n - 1] = 1.0;
  sys.rhs[n - 1] = far;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double s = std::sqrt(std::max(wm[i], 0.0));
    sys.lower[i - 1] = -s * d2.a[i];
    sys.diagonal[i] = 1.0 / dx - s * d2.b[i];
    sys.upper[i] = -s * d2.c[i];
    sys.rhs[i] = wn[i] / dx + 2.0 * (1.0 - s);
  }
  std::vector<double> w = solve_tridiagonal(sys);
  for (std::size_t i = 0; i < n; ++i) {
    if (w[i] < floor) throw Error(ErrorKind::negativity, "w became negative", i);
  }
  return w;
}

std::vector<double> phi_iterate(const std::vector<double>& pn, const std::vector<double>& pm,
                                const EquilibriumOnGrid& eq, const detail::SecondDifference& d2,
                                double dx, double floor) {
  const std::size_t n = pn.size();
  TridiagonalSystem sys(n);
  sys.diagonal[0] = 1.0;
  sys.diagonal[n - 1] = 1.0;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double w = pm[i] + eq.w[i];
    if (w < floor) throw Error(ErrorKind::sqrt_domain, "phi + w_bar is negative", i);
    const double u = std::sqrt(std::max(w, 0.0));
    const double ub = eq.u[i];
    sys.lower[i - 1] = -u * d2.a[i];
    sys.diagonal[i] = 1.0 / dx - u * d2.b[i] + 2.0 / (ub * (u + ub));
    sys.upper[i] = -u * d2.c[i];
    sys.rhs[i] = pn[i] / dx;
  }
  std::vector<double> phi = solve_tridiagonal(sys);
  for (std::size_t i = 0; i < n; ++i) {
    if (phi[i] + eq.w[i] < floor) throw Error(ErrorKind::negativity, "phi + w_bar became negative", i);
  }
  return phi;
}

void check_phi_start(const PhiState& state, const EquilibriumOnGrid& eq, double floor) {
  for (std::size_t i = 0; i < state.phi.size(); ++i) {
    if (state.phi[i] + eq.w[i] < floor) throw Error(ErrorKind::sqrt_domain, "phi + w_bar is negative", i);
  }
}

}  // namespace

VmState step_w(const VmState& state, const VmStepConfig& cfg, StepStats* stats) {
  check_config(cfg);
  if (cfg.form != VmForm::w_form) throw Error(ErrorKind::invalid_parameter, "step_w requires the w form");
  check_lengths(state.w.size(), state.grid_psi);
  const auto d2 = detail::second_difference(state.grid_psi);
  const double floor = -10.0 * cfg.picard_tol;
  auto attempt = [&](const std::vector<double>& start, double dx) {
    return detail::picard(
        start, [&](const std::vector<double>& wm) { return w_iterate(start, wm, d2, dx, state.far_value, floor); },
        cfg.picard_tol, cfg.picard_max, cfg.stagnation_window);
  };
  int iterations = 0;
  bool halved = false;
  std::vector<double> w = detail::advance(state.w, cfg.dx, attempt, &iterations, &halved);
  if (stats) *stats = StepStats{iterations, halved};
  return VmState{state.x + cfg.dx, state.grid_psi, std::move(w), state.far_value};
}

PhiState step_phi(const PhiState& state, const VmStepConfig& cfg, const EquilibriumOnGrid& eq,
                  StepStats* stats) {
  check_config(cfg);
  if (cfg.form != VmForm::phi_form) throw Error(ErrorKind::invalid_parameter, "step_phi requires the phi form");
  check_lengths(state.phi.size(), state.grid_psi);
  check_lengths(eq.w.size(), state.grid_psi);
  const double floor = -10.0 * cfg.picard_tol;
  check_phi_start(state, eq, floor);
  const auto d2 = detail::second_difference(state.grid_psi);
  auto attempt = [&](const std::vector<double>& start, double dx) {
    return detail::picard(
        start, [&](const std::vector<double>& pm) { return phi_iterate(start, pm, eq, d2, dx, floor); },
        cfg.picard_tol, cfg.picard_max, cfg.stagnation_window);
  };
  int iterations = 0;
  bool halved = false;
  std::vector<double> phi = detail::advance(state.phi, cfg.dx, attempt, &iterations, &halved);
  if (stats) *stats = StepStats{iterations, halved};
  return PhiState{state.x + cfg.dx, state.grid_psi, std::move(phi)};
}

PhiState step_phi(const PhiState& state, const VmStepConfig& cfg, StepStats* stats) {
  return step_phi(state, cfg, equilibrium_on_psi_grid(state.grid_psi), stats);
}

PhiState to_phi(const VmState& vm, const EquilibriumOnGrid& eq) {
  check_lengths(eq.w.size(), vm.grid_psi);
  std::vector<double> phi(vm.w.size());
  for (std::size_t i = 0; i < phi.size(); ++i) phi[i] = vm.w[i] - eq.w[i];
  phi.front() = 0.0;
  phi.back() = 0.0;
  return PhiState{vm.x, vm.grid_psi, std::move(phi)};
}

VmState to_w(const PhiState& state, const EquilibriumOnGrid& eq) {
  check_lengths(eq.w.size(), state.grid_psi);
  std::vector<double> w(state.phi.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = state.phi[i] + eq.w[i];
  w.front() = 0.0;
  w.back() = 1.0;
  return VmState{state.x, state.grid_psi, std::move(w), 1.0};
}

MarchResult<VmState> march(const VmState& initial, double x_end, const VmStepConfig& cfg,
                           const StationObserver<VmState>& observer) {
  check_lengths(initial.w.size(), initial.grid_psi);
  VmStepConfig c = cfg;
  c.form = VmForm::w_form;
  check_config(c);
  return detail::march_loop(initial, x_end, c.dx, observer, [&c](const VmState& s, double dx) {
    VmStepConfig local = c;
    local.dx = dx;
    return step_w(s, local);
  });
}

MarchResult<PhiState> march(const PhiState& initial, double x_end, const VmStepConfig& cfg,
                            const StationObserver<PhiState>& observer) {
  check_lengths(initial.phi.size(), initial.grid_psi);
  const EquilibriumOnGrid eq = equilibrium_on_psi_grid(initial.grid_psi);
  VmStepConfig c = cfg;
  c.form = VmForm::phi_form;
  check_config(c);
  return detail::march_loop(initial, x_end, c.dx, observer, [&c, &eq](const PhiState& s, double dx) {
    VmStepConfig local = c;
    local.dx = dx;
    return step_phi(s, local, eq);
  });
}

std::vector<double> steady_residual(const VmState& state) {
  check_lengths(state.w.size(), state.grid_psi);
  const auto d2 = detail::second_difference(state.grid_psi);
  const std::size_t n = state.w.size();
  std::vector<double> r(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double s = std::sqrt(std::max(state.w[i], 0.0));
    const double wpp = d2.a[i] * state.w[i - 1] + d2.b[i] * state.w[i] + d2.c[i] * state.w[i + 1];
    r[i] = s * wpp + 2.0 * (1.0 - s);
  }
  return r;
}

}  // namespace phlab

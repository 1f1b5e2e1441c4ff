#include "phlab/solver_eps.hpp"

#include <cmath>
#include <future>

#include "detail/march.hpp"
#include "detail/picard.hpp"
#include "phlab/diagnostics.hpp"
#include "phlab/equilibrium.hpp"
#include "phlab/error.hpp"
#include "phlab/numerics/fit.hpp"
#include "phlab/numerics/tridiagonal.hpp"

namespace phlab {
namespace {

void check_config(const EpsRunConfig& cfg) {
  if (!(cfg.dx > 0.0) || !std::isfinite(cfg.dx)) throw Error(ErrorKind::invalid_parameter, "dx must be positive");
  if (!(cfg.picard_tol > 0.0)) throw Error(ErrorKind::invalid_parameter, "picard_tol must be positive");
  if (cfg.picard_max < 1) throw Error(ErrorKind::invalid_parameter, "picard_max must be >= 1");
  if (!(cfg.y_max > 0.0)) throw Error(ErrorKind::invalid_parameter, "y_max must be positive");
}

void check_ladder(const std::vector<double>& ladder) {
  if (ladder.empty()) throw Error(ErrorKind::invalid_parameter, "eps ladder is empty");
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (!(ladder[i] > 0.0)) throw Error(ErrorKind::invalid_parameter, "eps values must be positive");
    if (i > 0 && !(ladder[i] < ladder[i - 1])) {
      throw Error(ErrorKind::invalid_parameter, "eps ladder must be strictly decreasing");
    }
  }
}

std::vector<double> eps_iterate(const PhysState& state, const std::vector<double>& un,
                                const std::vector<double>& um, const detail::FirstDifference& d1,
                                const detail::SecondDifference& d2, double dx) {
  const std::size_t n = un.size();
  const std::vector<double> v = normal_velocity(state.grid_y, un, um, dx);
  TridiagonalSystem sys(n);
  sys.diagonal[0] = 1.0;
  sys.rhs[0] = state.eps;
  sys.diagonal[n - 1] = 1.0;
  sys.rhs[n - 1] = 1.0 + state.eps;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    sys.lower[i - 1] = v[i] * d1.a[i] - d2.a[i];
    sys.diagonal[i] = un[i] / dx + v[i] * d1.b[i] - d2.b[i] + 1.0;
    sys.upper[i] = v[i] * d1.c[i] - d2.c[i];
    sys.rhs[i] = un[i] * un[i] / dx + 1.0 + state.eps;
  }
  std::vector<double> u = solve_tridiagonal(sys);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(u[i] > 0.0)) throw Error(ErrorKind::positivity_loss, "u lost positivity", i);
  }
  return u;
}

double max_u_difference(const VmState& a, const VmState& b) {
  double d = 0.0;
  for (std::size_t j = 0; j < a.w.size(); ++j) {
    d = std::max(d, std::abs(std::sqrt(std::max(a.w[j], 0.0)) - std::sqrt(std::max(b.w[j], 0.0))));
  }
  return d;
}

}  // namespace

Grid1D eps_grid_y(const EpsRunConfig& cfg) {
  return Grid1D::graded(cfg.y_max, cfg.y_count, cfg.y_grading_exponent);
}

Grid1D oracle_grid_psi(const EpsRunConfig& cfg) {
  return Grid1D::graded(hartmann_psi_of_y(cfg.y_max), cfg.psi_count, cfg.psi_grading_exponent);
}

PhysState step_eps(const PhysState& state, const EpsRunConfig& cfg, StepStats* stats) {
  check_config(cfg);
  const std::size_t n = state.grid_y.size();
  if (state.u.size() != n) throw Error(ErrorKind::length_mismatch, "step_eps: u does not match the grid");
  if (!(state.eps >= 0.0)) throw Error(ErrorKind::invalid_parameter, "step_eps: eps must be >= 0");
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(state.u[i] > 0.0)) throw Error(ErrorKind::positivity_loss, "u must be positive on the interior", i);
  }
  const auto d1 = detail::first_difference(state.grid_y);
  const auto d2 = detail::second_difference(state.grid_y);
  auto attempt = [&](const std::vector<double>& start, double dx) {
    return detail::picard(
        start, [&](const std::vector<double>& um) { return eps_iterate(state, start, um, d1, d2, dx); },
        cfg.picard_tol, cfg.picard_max, cfg.stagnation_window);
  };
  int iterations = 0;
  bool halved = false;
  std::vector<double> u = detail::advance(state.u, cfg.dx, attempt, &iterations, &halved);
  if (stats) *stats = StepStats{iterations, halved};
  std::vector<double> v = normal_velocity(state.grid_y, state.u, u, cfg.dx);
  std::vector<double> b = recover_b(state.grid_y, u, state.eps);
  return PhysState{state.x + cfg.dx, state.grid_y, std::move(u), std::move(v), std::move(b), state.eps};
}

MarchResult<PhysState> march_eps(const PhysState& initial, double x_end, const EpsRunConfig& cfg,
                                 const StationObserver<PhysState>& observer) {
  check_config(cfg);
  return detail::march_loop(initial, x_end, cfg.dx, observer, [&cfg](const PhysState& s, double dx) {
    EpsRunConfig local = cfg;
    local.dx = dx;
    return step_eps(s, local);
  });
}

LadderReport run_ladder(const InitialProfile& u0, const EpsRunConfig& cfg, double x_end, bool strict) {
  check_config(cfg);
  check_ladder(cfg.eps_ladder);
  const CompatibilityReport compat = check_compatibility(u0, cfg.compatibility_tol, 2);
  if (!compat.passes(cfg.compatibility_tol)) {
    throw Error(ErrorKind::invalid_parameter, "ladder initial data fails the compatibility conditions");
  }
  const Grid1D grid_y = eps_grid_y(cfg);
  const Grid1D grid_psi = oracle_grid_psi(cfg);
  const auto policy = cfg.concurrent ? std::launch::async : std::launch::deferred;

  std::vector<std::future<std::vector<PhysState>>> runs;
  for (double eps : cfg.eps_ladder) {
    runs.push_back(std::async(policy, [&u0, &cfg, &grid_y, eps, x_end] {
      return march_eps(phys_initial_state(u0, grid_y, eps), x_end, cfg).history;
    }));
  }
  auto oracle_run = std::async(policy, [&u0, &cfg, &grid_psi, x_end] {
    VmStepConfig vm_cfg;
    vm_cfg.dx = cfg.dx;
    vm_cfg.picard_tol = cfg.picard_tol;
    vm_cfg.picard_max = cfg.picard_max;
    vm_cfg.stagnation_window = cfg.stagnation_window;
    return march(vm_initial_state(u0, grid_psi), x_end, vm_cfg).final_state;
  });

  LadderReport report{{}, {}, {}, std::nullopt, true, oracle_run.get()};
  std::vector<VmState> mapped;
  for (std::size_t i = 0; i < runs.size(); ++i) {
    report.rungs.push_back(LadderRung{cfg.eps_ladder[i], runs[i].get()});
    mapped.push_back(to_von_mises(report.rungs.back().history.back(), grid_psi));
    report.oracle_differences.push_back(max_u_difference(mapped.back(), report.oracle));
  }
  for (std::size_t i = 0; i + 1 < mapped.size(); ++i) {
    report.pairwise_differences.push_back(max_u_difference(mapped[i], mapped[i + 1]));
  }
  if (report.rungs.size() >= 2) {
    std::vector<double> le, ld;
    for (std::size_t i = 0; i < report.rungs.size(); ++i) {
      le.push_back(std::log(report.rungs[i].eps));
      ld.push_back(std::log(report.oracle_differences[i]));
    }
    report.observed_order = fit_linear(le, ld).slope;
    for (std::size_t i = 1; i < report.oracle_differences.size(); ++i) {
      if (!(report.oracle_differences[i] < report.oracle_differences[i - 1])) report.monotone = false;
    }
    for (std::size_t i = 1; i < report.pairwise_differences.size(); ++i) {
      if (!(report.pairwise_differences[i] < report.pairwise_differences[i - 1])) report.monotone = false;
    }
  }
  if (strict && !report.monotone) {
    throw Error(ErrorKind::ladder_nonconvergence, "ladder differences do not decrease");
  }
  return report;
}

BoundReport uniform_bound_check(const PhysState& state, double delta0) {
  const Grid1D& g = state.grid_y;
  if (!(delta0 > 0.0) || delta0 > g.back()) {
    throw Error(ErrorKind::invalid_delta0, "delta0 must lie in (0, y_max]");
  }
  if (state.u.size() != g.size()) throw Error(ErrorKind::length_mismatch, "uniform_bound_check: length mismatch");
  BoundReport r;
  r.delta0 = delta0;
  r.lower_margin = r.upper_margin = r.floor_margin = INFINITY;
  for (std::size_t j = 0; j < g.size(); ++j) {
    const double y = g[j];
    const double u = state.u[j];
    bool bad = false;
    if (y <= delta0) {
      const double lo = u - 0.25 * y;
      const double up = 2.0 * (y + state.eps) - u;
      if (lo < r.lower_margin) { r.lower_margin = lo; r.lower_at = j; }
      if (up < r.upper_margin) { r.upper_margin = up; r.upper_at = j; }
      bad = lo <= 0.0 || up <= 0.0;
    }
    if (y >= delta0) {
      const double fl = u - 0.25 * delta0;
      if (fl < r.floor_margin) { r.floor_margin = fl; r.floor_at = j; }
      bad = bad || fl <= 0.0;
    }
    if (bad) r.violations.push_back(j);
  }
  return r;
}

}  // namespace phlab

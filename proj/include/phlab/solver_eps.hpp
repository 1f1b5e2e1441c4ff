#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "phlab/numerics/grid.hpp"
#include "phlab/profiles.hpp"
#include "phlab/solver_vm.hpp"
#include "phlab/transforms.hpp"

namespace phlab {

struct EpsRunConfig {
  std::vector<double> eps_ladder{0.1, 0.05, 0.025};
  double dx = 0.01;
  double picard_tol = 1e-10;
  int picard_max = 50;
  int stagnation_window = 5;
  double y_max = 15.0;
  std::size_t y_count = 2001;
  double y_grading_exponent = 1.0;
  // von-Mises oracle grid, psi_max = psi_bar(y_max)
  std::size_t psi_count = 2001;
  double psi_grading_exponent = 2.0;
  double compatibility_tol = 1e-6;
  bool concurrent = true;
};

Grid1D eps_grid_y(const EpsRunConfig& cfg);
Grid1D oracle_grid_psi(const EpsRunConfig& cfg);

/// Backward Euler / Picard step of the regularized system with wall value
/// eps and far value 1 + eps; v is lagged through the divergence constraint.
PhysState step_eps(const PhysState& state, const EpsRunConfig& cfg, StepStats* stats = nullptr);

MarchResult<PhysState> march_eps(const PhysState& initial, double x_end, const EpsRunConfig& cfg,
                                 const StationObserver<PhysState>& observer = {});

struct LadderRung {
  double eps = 0.0;
  std::vector<PhysState> history;
};

struct LadderReport {
  std::vector<LadderRung> rungs;
  std::vector<double> pairwise_differences;  // |u^{eps_i} - u^{eps_{i+1}}|_inf on the psi grid
  std::vector<double> oracle_differences;    // |u^{eps_i} - u^{vm}|_inf on the psi grid
  std::optional<double> observed_order;      // slope of log difference against log eps
  bool monotone = true;
  VmState oracle;
};

/// Marches u0 + eps for every rung to x_end (rungs run concurrently when
/// configured) and compares the final states with a direct von-Mises march
/// of u0. With `strict`, non-decreasing differences raise
/// ladder-nonconvergence.
LadderReport run_ladder(const InitialProfile& u0, const EpsRunConfig& cfg, double x_end,
                        bool strict = true);

struct BoundReport {
  double delta0 = 0.0;
  double lower_margin = 0.0;   // min (u - y/4) on [0, delta0]
  double upper_margin = 0.0;   // min (2 (y + eps) - u) on [0, delta0]
  double floor_margin = 0.0;   // min (u - delta0/4) on [delta0, y_max]
  std::size_t lower_at = 0, upper_at = 0, floor_at = 0;
  std::vector<std::size_t> violations;
  bool holds() const noexcept { return lower_margin > 0.0 && upper_margin > 0.0 && floor_margin > 0.0; }
};

BoundReport uniform_bound_check(const PhysState& state, double delta0);

}  // namespace phlab

#pragma once

#include <functional>
#include <vector>

#include "phlab/equilibrium.hpp"
#include "phlab/numerics/grid.hpp"
#include "phlab/transforms.hpp"

namespace phlab {

enum class VmForm { w_form, phi_form };

struct VmStepConfig {
  double dx = 0.01;
  double picard_tol = 1e-10;
  int picard_max = 50;
  VmForm form = VmForm::w_form;
  /// Consecutive nonmonotone Picard residuals that count as stagnation.
  int stagnation_window = 5;
};

/// phi = w - w_bar on a psi grid.
struct PhiState {
  double x = 0.0;
  Grid1D grid_psi;
  std::vector<double> phi;
};

struct StepStats {
  int iterations = 0;
  bool halved = false;
};

/// Backward Euler with the coefficient sqrt(w) frozen at the previous Picard
/// iterate. Dirichlet data w(0) = 0, w(psi_max) = far_value.
VmState step_w(const VmState& state, const VmStepConfig& cfg, StepStats* stats = nullptr);

/// Backward Euler for phi_t = u phi_psipsi - 2 phi / (ubar (u + ubar)),
/// u = sqrt(phi + w_bar) frozen per Picard iterate; homogeneous Dirichlet.
PhiState step_phi(const PhiState& state, const VmStepConfig& cfg, StepStats* stats = nullptr);
PhiState step_phi(const PhiState& state, const VmStepConfig& cfg, const EquilibriumOnGrid& eq,
                  StepStats* stats = nullptr);

PhiState to_phi(const VmState& vm, const EquilibriumOnGrid& eq);
VmState to_w(const PhiState& phi, const EquilibriumOnGrid& eq);

template <class State>
struct MarchResult {
  State final_state;
  std::vector<State> history;  // initial station first
};

template <class State>
using StationObserver = std::function<void(const State&)>;

/// Steps from initial.x to x_end. The step count is round((x_end - x0)/dx)
/// when that is within 1e-9 of an integer, otherwise the ceiling with a
/// shortened last step. The observer sees every accepted station. Errors
/// carry the station at which the failing step started.
MarchResult<VmState> march(const VmState& initial, double x_end, const VmStepConfig& cfg,
                           const StationObserver<VmState>& observer = {});
MarchResult<PhiState> march(const PhiState& initial, double x_end, const VmStepConfig& cfg,
                            const StationObserver<PhiState>& observer = {});

/// Steady residual sqrt(w) w_psipsi + 2 (1 - sqrt(w)) on interior nodes.
std::vector<double> steady_residual(const VmState& state);

}  // namespace phlab

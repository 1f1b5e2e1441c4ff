#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "phlab/equilibrium.hpp"
#include "phlab/numerics/fit.hpp"
#include "phlab/numerics/grid.hpp"
#include "phlab/profiles.hpp"
#include "phlab/solver_vm.hpp"
#include "phlab/transforms.hpp"

namespace phlab {

// ---- norms --------------------------------------------------------------

/// || values (1 + x)^l ||_L2 by the trapezoid rule.
double weighted_norm(const Grid1D& grid, const std::vector<double>& values, int weight_power);

/// || values / u^e ||_L2 over psi with the wall cell integrated under
/// values ~ a psi, u ~ c sqrt(psi). e in {1/2, 1, 3/2, 5/2}. When u(0) > 0
/// the plain trapezoid rule is used.
double singular_quotient_norm(const Grid1D& grid_psi, const std::vector<double>& values,
                              const std::vector<double>& u, double exponent,
                              double wall_tol = 1e-12);

/// sup over interior nodes of max(u/ubar, ubar/u).
double functional_f(const std::vector<double>& u, const std::vector<double>& ubar);

/// sup over interior nodes of |u - ubar| / u.
double functional_alpha(const std::vector<double>& u, const std::vector<double>& ubar);

// ---- energy functional --------------------------------------------------

struct EnergyTerms {
  double phi_l2 = 0.0;
  double phi_over_sqrt_u = 0.0;
  double phi_psi_l2 = 0.0;
  double phi_over_u32 = 0.0;
  double phi_x_l2 = 0.0;
  double phi_x_over_sqrt_u = 0.0;
  double phi_x_psi_l2 = 0.0;
  double phi_x_over_u32 = 0.0;
  double sum() const noexcept;
};

struct EnergySeries {
  std::vector<double> x;
  std::vector<EnergyTerms> terms;
  std::vector<double> instantaneous;
  std::vector<double> running_sup;
};

/// phi_x is the backward difference between stations; station 0 reuses the
/// first difference.
EnergySeries energy_E(const std::vector<PhiState>& history, const EquilibriumOnGrid& eq);

// ---- compatibility ------------------------------------------------------

struct CompatibilityReport {
  double residual_order0 = 0.0;  // u0(0)
  double slope = 0.0;            // u0'(0)
  double residual_order1 = 0.0;  // -u0''(0) - 1
  double residual_order2 = 0.0;  // -u0'''(0) + u0'(0)
  std::optional<double> residual_order3;  // (v0''' - v0')(0)
  std::optional<double> residual_order4;  // (v0'''' - v0'')(0)
  bool from_stencils = false;
  bool passes(double tol) const noexcept;
};

enum class DerivativeSource { automatic, exact, stencil };

/// Orders 0-2 from exact closures, or from one-sided stencils (d + 4 points
/// for the d-th derivative, spacing `h`, or the first sample nodes of a
/// sampled profile). Orders 3-4 (max_order > 2) need exact closures and
/// passing orders 0-2.
CompatibilityReport check_compatibility(const InitialProfile& u0, double tol, int max_order = 2,
                                        DerivativeSource source = DerivativeSource::automatic,
                                        double h = 0.01);

/// v0(y) = u0 int_0^y (-u0'' + u0 - 1)/u0^2, Taylor coefficients at 0.
std::vector<double> initial_normal_velocity_taylor(const InitialProfile& u0, int terms);

// ---- Hardy inequalities -------------------------------------------------

struct HardyResult {
  double lhs = 0.0;
  double rhs = 0.0;
  bool holds = false;
};

/// lambda > -1/2: ||(1+y)^l f|| <= 2/(2l+1) ||(1+y)^(l+1) f'|| (f must decay).
/// lambda < -1/2: ||(1+y)^l f|| <= sqrt(-1/(2l+1)) |f(0)| - 1/(2l+1) ||(1+y)^(l+1) f'||.
HardyResult hardy_check(const Grid1D& grid, const std::vector<double>& f, double lambda,
                        double boundary_value, double slack = 0.02, double decay_tol = 1e-8);

struct HardySuiteReport {
  std::uint64_t seed = 42;
  int draws = 0;
  int checks = 0;
  int passed = 0;
  double worst_ratio = 0.0;  // max lhs / rhs
  bool all_pass() const noexcept { return checks > 0 && passed == checks; }
};

/// Random Gaussian bumps times cubics on [0, 30]; every draw is checked for
/// each lambda.
HardySuiteReport hardy_suite(std::uint64_t seed, int draws = 100,
                             const std::vector<double>& lambdas = {0.0, 0.5, 1.0},
                             double slack = 0.02);

// ---- physical-variable decay --------------------------------------------

struct PhysicalDecay {
  double x = 0.0;
  double u_H2 = 0.0;    // ||u - ubar||_H2
  double u_y_inf = 0.0; // ||u_y - ubar_y||_inf
  double b_y_H2 = 0.0;  // ||b_y - bbar_y||_H2
};

/// H2 = sqrt(||g||^2 + ||g'||^2 + ||g''||^2) by the trapezoid rule.
std::vector<PhysicalDecay> physical_decay(const std::vector<VmState>& history, const Grid1D& grid_y);

// ---- regularity probe ---------------------------------------------------

struct RegularityReport {
  double mixed_sup = 0.0;   // sup_x || d_x d_y u (1+y) ||_inf
  double second_sup = 0.0;  // sup_x || d_yy u (1+y) ||_inf
};

RegularityReport higher_regularity_probe(const std::vector<PhysState>& history);

/// Ratios fine/coarse of both sups.
std::pair<double, double> refinement_ratios(const RegularityReport& coarse, const RegularityReport& fine);

// ---- certificates and fits ----------------------------------------------

struct DecayCertificate {
  std::string name;
  bool pass = false;
  double max_ratio = 0.0;  // max e^{x - x0} s(x) / s(x0)
  double margin = 0.0;     // (1 + slack) - max_ratio
};

DecayCertificate decay_certificate(const std::string& name, const std::vector<double>& x,
                                   const std::vector<double>& series, double slack = 0.05);

struct SeriesFit {
  std::string series;
  LogLinearFit fit;
};

/// Log-linear fit over samples with x in [x_lo, x_hi].
SeriesFit fit_series(const std::string& name, const std::vector<double>& x,
                     const std::vector<double>& series, double x_lo, double x_hi);

// ---- per-station records ------------------------------------------------

struct DiagnosticsRecord {
  double x = 0.0;
  double phi_l2 = 0.0;
  double phi_over_sqrt_u = 0.0;
  double phi_over_u32 = 0.0;
  double phi_psi_l2 = 0.0;
  double phi_x_l2 = 0.0;
  double phi_x_psi_l2 = 0.0;
  double phi_x_over_sqrt_u = 0.0;
  double phi_x_over_u32 = 0.0;
  double f_sup = 1.0;
  double alpha_sup = 0.0;
  double energy_instant = 0.0;
  double energy_E = 0.0;
  double u_max_dev = 0.0;  // max |u - ubar| on the psi grid
  double u_minus_ubar_H2y = 0.0;
  double u_y_minus_ubar_y_Linf = 0.0;
  double b_y_H2y_diff = 0.0;
  double alpha_bound_ratio = 0.0;  // alpha / (f^{17/2} E_inst)
};

/// History in w form; the physical columns use grid_y.
std::vector<DiagnosticsRecord> diagnostics_records(const std::vector<VmState>& history,
                                                   const EquilibriumOnGrid& eq, const Grid1D& grid_y);

/// max over stations of alpha / (f^{17/2} E_inst), over stations with E_inst > 0.
double alpha_bound_constant(const std::vector<DiagnosticsRecord>& records);

}  // namespace phlab

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "phlab/numerics/grid.hpp"

namespace phlab {

struct VmState;
struct PhysState;

/// Initial tangential velocity u0(y). Analytic families carry exact
/// derivative closures and an exact stream function; sampled profiles
/// carry only their nodes.
class InitialProfile {
 public:
  using DerivativeFn = std::function<double(double, int)>;

  static InitialProfile hartmann();

  /// u0 = 1 - e^{-y} + amplitude * y^power * e^{-y}.
  static InitialProfile perturbed(double amplitude, int power);

  /// Samples (y_j, u_j) with y_0 = 0; monotone cubic in between.
  static InitialProfile sampled(Grid1D grid_y, std::vector<double> u);

  const std::string& name() const noexcept { return name_; }
  double amplitude() const noexcept { return amplitude_; }

  double value(double y) const;

  /// d^order u0 / dy^order; exact closures only.
  std::optional<double> exact_derivative(double y, int order) const;
  bool has_exact_derivatives() const noexcept { return static_cast<bool>(derivative_); }

  /// psi0(y) = int_0^y u0.
  double stream_function(double y) const;

  bool is_sampled() const noexcept { return samples_.has_value(); }
  const Grid1D& sample_grid() const;
  const std::vector<double>& sample_values() const;

  std::vector<double> on_grid(const Grid1D& grid_y) const;

  /// Checks u0(0) = 0, u0 > 0 on (0, y_max] and u0(y_max) near 1.
  /// Throws invalid-parameter otherwise.
  void validate(double y_max) const;

 private:
  InitialProfile() = default;

  std::string name_;
  double amplitude_ = 0.0;
  std::function<double(double)> value_;
  DerivativeFn derivative_;
  std::function<double(double)> psi_;
  struct Samples {
    Grid1D grid;
    std::vector<double> u;
    std::vector<double> psi;
  };
  std::optional<Samples> samples_;
};

/// Lower incomplete gamma function gamma(k + 1, y) for integer k >= 0.
double lower_incomplete_gamma_int(int k, double y);

/// w0 = u0^2 on the psi grid, with y(psi_j) found by root finding on the
/// exact stream function. The far node is pinned to 1.
VmState vm_initial_state(const InitialProfile& profile, const Grid1D& grid_psi);

PhysState phys_initial_state(const InitialProfile& profile, const Grid1D& grid_y, double eps);

}  // namespace phlab

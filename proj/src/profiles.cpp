#include "phlab/profiles.hpp"

#include <cmath>
#include <limits>
#include <memory>

#include "phlab/equilibrium.hpp"
#include "phlab/error.hpp"
#include "phlab/numerics/interpolation.hpp"
#include "phlab/numerics/quadrature.hpp"
#include "phlab/numerics/roots.hpp"
#include "phlab/transforms.hpp"

namespace phlab {
namespace {

double hartmann_derivative(double y, int order) {
  if (order == 0) return hartmann_u(y);
  const double e = std::exp(-y);
  return (order % 2 == 1) ? e : -e;
}

// d^n/dy^n [y^k e^{-y}]
double bump_derivative(double y, int k, int n) {
  double sum = 0.0;
  double binom = 1.0;
  const int top = std::min(n, k);
  for (int i = 0; i <= top; ++i) {
    double falling = 1.0;
    for (int m = 0; m < i; ++m) falling *= static_cast<double>(k - m);
    const double sign = ((n - i) % 2 == 0) ? 1.0 : -1.0;
    sum += sign * binom * falling * std::pow(y, k - i);
    binom = binom * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return sum * std::exp(-y);
}

double factorial(int k) {
  double f = 1.0;
  for (int i = 2; i <= k; ++i) f *= i;
  return f;
}

}  // namespace

double lower_incomplete_gamma_int(int k, double y) {
  if (k < 0) throw Error(ErrorKind::invalid_parameter, "lower_incomplete_gamma_int: k < 0");
  if (!(y >= 0.0)) throw Error(ErrorKind::negative_argument, "lower_incomplete_gamma_int: y < 0");
  if (y == 0.0) return 0.0;
  const double kf = factorial(k);
  if (y < 40.0) {
    // k! e^{-y} sum_{m>k} y^m / m!, all terms positive
    double term = 1.0;
    for (int m = 1; m <= k + 1; ++m) term *= y / m;
    double sum = 0.0;
    for (int m = k + 1; m < k + 400; ++m) {
      sum += term;
      if (term < 1e-18 * sum) break;
      term *= y / (m + 1);
    }
    return kf * std::exp(-y) * sum;
  }
  double partial = 0.0;
  double term = 1.0;
  for (int m = 0; m <= k; ++m) {
    partial += term;
    term *= y / (m + 1);
  }
  return kf * (1.0 - std::exp(-y) * partial);
}

InitialProfile InitialProfile::hartmann() {
  InitialProfile p;
  p.name_ = "hartmann";
  p.value_ = [](double y) { return hartmann_u(y); };
  p.derivative_ = hartmann_derivative;
  p.psi_ = [](double y) { return hartmann_psi_of_y(y); };
  return p;
}

InitialProfile InitialProfile::perturbed(double amplitude, int power) {
  if (power < 1) throw Error(ErrorKind::invalid_parameter, "perturbed profile: power must be >= 1");
  if (!std::isfinite(amplitude)) throw Error(ErrorKind::invalid_parameter, "perturbed profile: amplitude");
  InitialProfile p;
  p.name_ = power == 4 ? "perturbed_quartic" : power == 2 ? "perturbed_quadratic"
                                                          : "perturbed_y" + std::to_string(power);
  p.amplitude_ = amplitude;
  p.value_ = [amplitude, power](double y) {
    return hartmann_u(y) + amplitude * std::pow(y, power) * std::exp(-y);
  };
  p.derivative_ = [amplitude, power](double y, int order) {
    return hartmann_derivative(y, order) + amplitude * bump_derivative(y, power, order);
  };
  p.psi_ = [amplitude, power](double y) {
    return hartmann_psi_of_y(y) + amplitude * lower_incomplete_gamma_int(power, y);
  };
  return p;
}

InitialProfile InitialProfile::sampled(Grid1D grid_y, std::vector<double> u) {
  if (u.size() != grid_y.size()) throw Error(ErrorKind::length_mismatch, "sampled profile: length mismatch");
  for (double x : u) {
    if (!std::isfinite(x)) throw Error(ErrorKind::non_finite_input, "sampled profile: non-finite sample");
  }
  InitialProfile p;
  p.name_ = "custom_samples";
  auto interp = std::make_shared<MonotoneCubic>(grid_y.nodes(), u);
  std::vector<double> slopes(interp->slopes().begin(), interp->slopes().end());
  std::vector<double> psi = cumulative_hermite(grid_y, u, slopes);
  auto psi_interp = std::make_shared<MonotoneCubic>(grid_y.nodes(), psi);
  p.value_ = [interp](double y) { return interp->value(y); };
  p.psi_ = [psi_interp](double y) { return psi_interp->value(y); };
  p.samples_ = Samples{std::move(grid_y), std::move(u), std::move(psi)};
  return p;
}

double InitialProfile::value(double y) const {
  if (!(y >= 0.0)) throw Error(ErrorKind::negative_argument, "profile evaluated at y < 0");
  return value_(y);
}

std::optional<double> InitialProfile::exact_derivative(double y, int order) const {
  if (!derivative_) return std::nullopt;
  if (order < 0) throw Error(ErrorKind::invalid_parameter, "derivative order < 0");
  return derivative_(y, order);
}

double InitialProfile::stream_function(double y) const {
  if (!(y >= 0.0)) throw Error(ErrorKind::negative_argument, "stream function at y < 0");
  return psi_(y);
}

const Grid1D& InitialProfile::sample_grid() const {
  if (!samples_) throw Error(ErrorKind::derivative_unavailable, "profile has no samples");
  return samples_->grid;
}

const std::vector<double>& InitialProfile::sample_values() const {
  if (!samples_) throw Error(ErrorKind::derivative_unavailable, "profile has no samples");
  return samples_->u;
}

std::vector<double> InitialProfile::on_grid(const Grid1D& grid_y) const {
  std::vector<double> out(grid_y.size());
  for (std::size_t j = 0; j < out.size(); ++j) out[j] = value_(grid_y[j]);
  return out;
}

void InitialProfile::validate(double y_max) const {
  if (std::abs(value_(0.0)) > 1e-12) {
    throw Error(ErrorKind::invalid_parameter, name_ + ": u0(0) must vanish");
  }
  const int n = 3000;
  for (int i = 1; i <= n; ++i) {
    const double y = y_max * i / n;
    if (!(value_(y) > 0.0)) {
      throw Error(ErrorKind::invalid_parameter,
                  name_ + ": u0 is not positive at y = " + std::to_string(y));
    }
  }
  if (std::abs(value_(y_max) - 1.0) > 1e-2) {
    throw Error(ErrorKind::invalid_parameter, name_ + ": u0(y_max) is not close to 1");
  }
}

VmState vm_initial_state(const InitialProfile& profile, const Grid1D& grid_psi) {
  if (profile.is_sampled()) {
    PhysState phys = phys_initial_state(profile, profile.sample_grid(), 0.0);
    VmState vm = to_von_mises(phys, grid_psi);
    vm.w.back() = vm.far_value = 1.0;
    return vm;
  }
  const std::size_t n = grid_psi.size();
  std::vector<double> w(n, 0.0);
  double y_prev = 0.0;
  auto df = [&profile](double y) { return profile.value(y); };
  for (std::size_t j = 1; j + 1 < n; ++j) {
    const double psi = grid_psi[j];
    auto f = [&profile, psi](double y) { return profile.stream_function(y) - psi; };
    double hi = y_prev + 1.0;
    while (f(hi) < 0.0) {
      hi = y_prev + 2.0 * (hi - y_prev);
      if (hi > 1e6) throw Error(ErrorKind::target_out_of_range, "vm_initial_state: psi beyond profile range");
    }
    const double tol = std::max(1e-15 * psi, std::numeric_limits<double>::min());
    const double y = find_root_bisect_newton(f, df, Bracket{y_prev, hi}, tol,
                                             j == 1 ? std::sqrt(2.0 * psi) : y_prev);
    const double u = profile.value(y);
    w[j] = u * u;
    y_prev = y;
  }
  w[n - 1] = 1.0;
  return VmState{0.0, grid_psi, std::move(w), 1.0};
}

PhysState phys_initial_state(const InitialProfile& profile, const Grid1D& grid_y, double eps) {
  if (!(eps >= 0.0)) throw Error(ErrorKind::invalid_parameter, "eps must be >= 0");
  const std::size_t n = grid_y.size();
  std::vector<double> u = profile.on_grid(grid_y);
  for (double& x : u) x += eps;
  u.front() = eps;
  u.back() = 1.0 + eps;
  std::vector<double> b = recover_b(grid_y, u, eps);
  return PhysState{0.0, grid_y, std::move(u), std::vector<double>(n, 0.0), std::move(b), eps};
}

}  // namespace phlab

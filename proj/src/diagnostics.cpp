#include "phlab/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "phlab/error.hpp"
#include "phlab/numerics/finite_difference.hpp"
#include "phlab/numerics/quadrature.hpp"

namespace phlab {
namespace {

void same_length(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw Error(ErrorKind::length_mismatch, std::string(what) + ": length mismatch");
}

double l2(const Grid1D& grid, const std::vector<double>& values) {
  std::vector<double> sq(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) sq[j] = values[j] * values[j];
  return std::sqrt(trapezoid_integral(grid, sq));
}

double weighted_l2(const Grid1D& grid, const std::vector<double>& values, double power) {
  same_length(values.size(), grid.size(), "weighted norm");
  std::vector<double> sq(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) {
    const double wv = values[j] * std::pow(1.0 + grid[j], power);
    sq[j] = wv * wv;
  }
  return std::sqrt(trapezoid_integral(grid, sq));
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

// 53 random bits, platform independent
double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(std::mt19937_64& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

std::vector<double> y_derivatives(const InitialProfile& u0, int count, bool stencil, double h) {
  std::vector<double> d(count);
  if (!stencil) {
    for (int k = 0; k < count; ++k) d[k] = *u0.exact_derivative(0.0, k);
    return d;
  }
  for (int k = 0; k < count; ++k) {
    const std::size_t points = static_cast<std::size_t>(k) + 4;
    std::vector<double> nodes(points), values(points);
    if (u0.is_sampled()) {
      const Grid1D& g = u0.sample_grid();
      if (g.size() < points) throw Error(ErrorKind::derivative_unavailable, "too few samples for stencils");
      for (std::size_t i = 0; i < points; ++i) {
        nodes[i] = g[i];
        values[i] = u0.sample_values()[i];
      }
    } else {
      for (std::size_t i = 0; i < points; ++i) {
        nodes[i] = h * static_cast<double>(i);
        values[i] = u0.value(nodes[i]);
      }
    }
    const std::vector<double> w = fornberg_weights(0.0, nodes, k);
    double s = 0.0;
    for (std::size_t i = 0; i < points; ++i) s += w[i] * values[i];
    d[k] = s;
  }
  return d;
}

}  // namespace

double weighted_norm(const Grid1D& grid, const std::vector<double>& values, int weight_power) {
  if (weight_power < 0) throw Error(ErrorKind::invalid_parameter, "weight power must be >= 0");
  return weighted_l2(grid, values, static_cast<double>(weight_power));
}

double singular_quotient_norm(const Grid1D& grid_psi, const std::vector<double>& values,
                              const std::vector<double>& u, double exponent, double wall_tol) {
  same_length(values.size(), grid_psi.size(), "singular_quotient_norm");
  same_length(u.size(), grid_psi.size(), "singular_quotient_norm");
  if (exponent != 0.5 && exponent != 1.0 && exponent != 1.5 && exponent != 2.5) {
    throw Error(ErrorKind::invalid_parameter, "quotient exponent must be 1/2, 1, 3/2 or 5/2");
  }
  const std::size_t n = values.size();
  for (std::size_t j = 1; j < n; ++j) {
    if (!(u[j] > 0.0)) throw Error(ErrorKind::nonpositive_u, "singular_quotient_norm: u <= 0", j);
  }
  std::vector<double> q(n, 0.0);
  for (std::size_t j = 1; j < n; ++j) {
    const double r = values[j] / std::pow(u[j], exponent);
    q[j] = r * r;
  }
  if (u[0] > 0.0) {
    const double r = values[0] / std::pow(u[0], exponent);
    q[0] = r * r;
    return std::sqrt(trapezoid_integral(grid_psi, q));
  }
  if (std::abs(values[0]) > wall_tol) {
    throw Error(ErrorKind::nonzero_wall_value, "values must vanish where u does", 0);
  }
  // wall cell: integrand ~ q_1 (psi/psi_1)^{2-e}
  double sum = q[1] * grid_psi[1] / (3.0 - exponent);
  for (std::size_t j = 1; j + 1 < n; ++j) sum += 0.5 * (q[j] + q[j + 1]) * (grid_psi[j + 1] - grid_psi[j]);
  return std::sqrt(sum);
}

double functional_f(const std::vector<double>& u, const std::vector<double>& ubar) {
  same_length(u.size(), ubar.size(), "functional_f");
  double f = 1.0;
  for (std::size_t j = 1; j < u.size(); ++j) {
    if (!(u[j] > 0.0) || !(ubar[j] > 0.0)) throw Error(ErrorKind::nonpositive_input, "functional_f: nonpositive input", j);
    f = std::max({f, u[j] / ubar[j], ubar[j] / u[j]});
  }
  return f;
}

double functional_alpha(const std::vector<double>& u, const std::vector<double>& ubar) {
  same_length(u.size(), ubar.size(), "functional_alpha");
  double a = 0.0;
  for (std::size_t j = 1; j < u.size(); ++j) {
    if (!(u[j] > 0.0) || !(ubar[j] > 0.0)) throw Error(ErrorKind::nonpositive_input, "functional_alpha: nonpositive input", j);
    a = std::max(a, std::abs(u[j] - ubar[j]) / u[j]);
  }
  return a;
}

double EnergyTerms::sum() const noexcept {
  return phi_l2 + phi_over_sqrt_u + phi_psi_l2 + phi_over_u32 + phi_x_l2 + phi_x_over_sqrt_u +
         phi_x_psi_l2 + phi_x_over_u32;
}

EnergySeries energy_E(const std::vector<PhiState>& history, const EquilibriumOnGrid& eq) {
  if (history.size() < 2) throw Error(ErrorKind::insufficient_stations, "energy_E needs at least two stations");
  EnergySeries s;
  double sup = 0.0;
  for (std::size_t k = 0; k < history.size(); ++k) {
    const PhiState& st = history[k];
    const Grid1D& g = st.grid_psi;
    same_length(st.phi.size(), g.size(), "energy_E");
    same_length(eq.w.size(), g.size(), "energy_E");
    const PhiState& a = history[k == 0 ? 0 : k - 1];
    const PhiState& b = history[k == 0 ? 1 : k];
    if (!a.grid_psi.same_nodes(b.grid_psi)) throw Error(ErrorKind::grid_mismatch, "energy_E: grids differ");
    const double dx = b.x - a.x;
    if (!(dx > 0.0)) throw Error(ErrorKind::insufficient_stations, "energy_E: stations must increase");
    std::vector<double> u(g.size()), phix(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) {
      u[j] = std::sqrt(std::max(st.phi[j] + eq.w[j], 0.0));
      phix[j] = (b.phi[j] - a.phi[j]) / dx;
    }
    EnergyTerms t;
    t.phi_l2 = l2(g, st.phi);
    t.phi_over_sqrt_u = singular_quotient_norm(g, st.phi, u, 0.5);
    t.phi_psi_l2 = l2(g, fd_first(g, st.phi));
    t.phi_over_u32 = singular_quotient_norm(g, st.phi, u, 1.5);
    t.phi_x_l2 = l2(g, phix);
    t.phi_x_over_sqrt_u = singular_quotient_norm(g, phix, u, 0.5);
    t.phi_x_psi_l2 = l2(g, fd_first(g, phix));
    t.phi_x_over_u32 = singular_quotient_norm(g, phix, u, 1.5);
    const double inst = t.sum();
    sup = std::max(sup, inst);
    s.x.push_back(st.x);
    s.terms.push_back(t);
    s.instantaneous.push_back(inst);
    s.running_sup.push_back(sup);
  }
  return s;
}

bool CompatibilityReport::passes(double tol) const noexcept {
  bool ok = std::abs(residual_order0) <= tol && slope > 0.0 && std::abs(residual_order1) <= tol &&
            std::abs(residual_order2) <= tol;
  if (residual_order3) ok = ok && std::abs(*residual_order3) <= tol;
  if (residual_order4) ok = ok && std::abs(*residual_order4) <= tol;
  return ok;
}

std::vector<double> initial_normal_velocity_taylor(const InitialProfile& u0, int terms) {
  if (!u0.has_exact_derivatives()) {
    throw Error(ErrorKind::derivative_unavailable, "v0 expansion needs exact derivative closures");
  }
  if (terms < 1) throw Error(ErrorKind::invalid_parameter, "terms must be >= 1");
  const int n = terms + 3;
  std::vector<double> c(n + 2);
  double fact = 1.0;
  for (int k = 0; k < n + 2; ++k) {
    if (k > 0) fact *= k;
    c[k] = *u0.exact_derivative(0.0, k) / fact;
  }
  // g = -u0'' + u0 - 1 ; compatible data make g = O(y^2)
  std::vector<double> g(n);
  for (int k = 0; k < n; ++k) g[k] = -c[k + 2] * (k + 2) * (k + 1) + c[k] - (k == 0 ? 1.0 : 0.0);
  const int m = n - 2;
  std::vector<double> G(m), P(m), Q(m, 0.0), H(m, 0.0);
  for (int k = 0; k < m; ++k) {
    G[k] = g[k + 2];
    P[k] = c[k + 1];
  }
  for (int i = 0; i < m; ++i)
    for (int j = 0; i + j < m; ++j) Q[i + j] += P[i] * P[j];
  if (!(Q[0] > 0.0)) throw Error(ErrorKind::invalid_parameter, "v0 expansion needs u0'(0) != 0");
  for (int k = 0; k < m; ++k) {
    double s = G[k];
    for (int i = 1; i <= k; ++i) s -= Q[i] * H[k - i];
    H[k] = s / Q[0];
  }
  std::vector<double> I(m + 1, 0.0);
  for (int k = 0; k < m; ++k) I[k + 1] = H[k] / (k + 1);
  std::vector<double> V(terms, 0.0);
  for (int k = 0; k < terms; ++k)
    for (int i = 0; i <= k && i < static_cast<int>(c.size()); ++i)
      if (k - i <= m) V[k] += c[i] * I[k - i];
  return V;
}

CompatibilityReport check_compatibility(const InitialProfile& u0, double tol, int max_order,
                                        DerivativeSource source, double h) {
  if (max_order < 0 || max_order > 4) throw Error(ErrorKind::invalid_parameter, "compatibility orders run 0..4");
  if (!(h > 0.0)) throw Error(ErrorKind::invalid_parameter, "stencil spacing must be positive");
  bool stencil = false;
  switch (source) {
    case DerivativeSource::automatic: stencil = !u0.has_exact_derivatives(); break;
    case DerivativeSource::exact:
      if (!u0.has_exact_derivatives()) throw Error(ErrorKind::derivative_unavailable, "profile has no exact derivatives");
      break;
    case DerivativeSource::stencil: stencil = true; break;
  }
  const std::vector<double> d = y_derivatives(u0, 4, stencil, h);
  CompatibilityReport r;
  r.from_stencils = stencil;
  r.residual_order0 = d[0];
  r.slope = d[1];
  r.residual_order1 = -d[2] - 1.0;
  r.residual_order2 = -d[3] + d[1];
  if (max_order > 2) {
    if (stencil) throw Error(ErrorKind::derivative_unavailable, "orders 3-4 need exact derivative closures");
    if (!r.passes(tol)) throw Error(ErrorKind::order_request, "orders 3-4 requested but orders 0-2 fail");
    const std::vector<double> V = initial_normal_velocity_taylor(u0, 5);
    r.residual_order3 = 6.0 * V[3] - V[1];
    if (max_order > 3) r.residual_order4 = 24.0 * V[4] - 2.0 * V[2];
  }
  return r;
}

HardyResult hardy_check(const Grid1D& grid, const std::vector<double>& f, double lambda,
                        double boundary_value, double slack, double decay_tol) {
  same_length(f.size(), grid.size(), "hardy_check");
  if (std::abs(lambda + 0.5) < 1e-12) throw Error(ErrorKind::lambda_critical, "lambda = -1/2 is excluded");
  const std::vector<double> fy = fd_first(grid, f);
  HardyResult r;
  r.lhs = weighted_l2(grid, f, lambda);
  const double grad = weighted_l2(grid, fy, lambda + 1.0);
  const double k = 2.0 * lambda + 1.0;
  if (lambda > -0.5) {
    if (std::abs(f.back()) > decay_tol) throw Error(ErrorKind::non_decaying, "f does not decay at the far end");
    r.rhs = 2.0 / k * grad;
  } else {
    const double trace = std::isnan(boundary_value) ? f.front() : boundary_value;
    r.rhs = std::sqrt(-1.0 / k) * std::abs(trace) - grad / k;
  }
  r.holds = r.lhs <= r.rhs * (1.0 + slack);
  return r;
}

HardySuiteReport hardy_suite(std::uint64_t seed, int draws, const std::vector<double>& lambdas, double slack) {
  if (draws < 1) throw Error(ErrorKind::invalid_parameter, "hardy_suite needs at least one draw");
  const Grid1D grid = Grid1D::graded(30.0, 3001, 1.0);
  std::mt19937_64 rng(seed);
  HardySuiteReport rep;
  rep.seed = seed;
  rep.draws = draws;
  for (int d = 0; d < draws; ++d) {
    const double center = uniform(rng, 0.0, 5.0);
    const double width = uniform(rng, 0.3, 2.0);
    double p[4];
    for (double& c : p) c = uniform(rng, -1.0, 1.0);
    std::vector<double> f(grid.size());
    for (std::size_t j = 0; j < f.size(); ++j) {
      const double y = grid[j];
      const double z = (y - center) / width;
      f[j] = (p[0] + y * (p[1] + y * (p[2] + y * p[3]))) * std::exp(-z * z);
    }
    for (double lambda : lambdas) {
      const HardyResult h = hardy_check(grid, f, lambda, f.front(), slack);
      ++rep.checks;
      if (h.holds) ++rep.passed;
      if (h.rhs > 0.0) rep.worst_ratio = std::max(rep.worst_ratio, h.lhs / h.rhs);
    }
  }
  return rep;
}

std::vector<PhysicalDecay> physical_decay(const std::vector<VmState>& history, const Grid1D& grid_y) {
  if (history.size() < 2) throw Error(ErrorKind::insufficient_stations, "physical_decay needs at least two stations");
  const std::size_t n = grid_y.size();
  std::vector<double> ub(n), uby(n), ubyy(n), bb(n);
  for (std::size_t j = 0; j < n; ++j) {
    ub[j] = hartmann_u(grid_y[j]);
    uby[j] = hartmann_u_y(grid_y[j]);
    ubyy[j] = hartmann_u_yy(grid_y[j]);
    bb[j] = hartmann_b(grid_y[j]);
  }
  std::vector<PhysicalDecay> out;
  out.reserve(history.size());
  std::vector<double> g0(n), g1(n), g2(n), db(n);
  for (std::size_t k = 0; k < history.size(); ++k) {
    const VmState& neighbor = history[k == 0 ? 1 : k - 1];
    const PhysicalProfile p = physical_profile(history[k], neighbor, grid_y);
    const std::vector<double> b = recover_b(grid_y, p.u);
    for (std::size_t j = 0; j < n; ++j) {
      g0[j] = p.u[j] - ub[j];
      g1[j] = p.u_y[j] - uby[j];
      g2[j] = p.u_yy[j] - ubyy[j];
      db[j] = b[j] - bb[j];
    }
    const std::vector<double> bdy = fd_first(grid_y, db);
    const double n0 = l2(grid_y, g0), n1 = l2(grid_y, g1), n2 = l2(grid_y, g2), nb = l2(grid_y, bdy);
    out.push_back(PhysicalDecay{history[k].x, std::sqrt(n0 * n0 + n1 * n1 + n2 * n2), max_abs(g1),
                                std::sqrt(nb * nb + n1 * n1 + n2 * n2)});
  }
  return out;
}

RegularityReport higher_regularity_probe(const std::vector<PhysState>& history) {
  if (history.size() < 3) throw Error(ErrorKind::insufficient_stations, "regularity probe needs at least three stations");
  RegularityReport r;
  std::vector<double> uy_prev;
  for (std::size_t k = 0; k < history.size(); ++k) {
    const PhysState& s = history[k];
    const Grid1D& g = s.grid_y;
    if (k > 0 && !g.same_nodes(history[k - 1].grid_y)) throw Error(ErrorKind::grid_mismatch, "regularity probe: grids differ");
    const std::vector<double> uy = fd_first(g, s.u);
    const std::vector<double> uyy = fd_second(g, s.u);
    for (std::size_t j = 0; j < g.size(); ++j) r.second_sup = std::max(r.second_sup, std::abs(uyy[j]) * (1.0 + g[j]));
    if (k > 0) {
      const double dx = s.x - history[k - 1].x;
      if (!(dx > 0.0)) throw Error(ErrorKind::insufficient_stations, "regularity probe: stations must increase");
      for (std::size_t j = 0; j < g.size(); ++j) {
        r.mixed_sup = std::max(r.mixed_sup, std::abs(uy[j] - uy_prev[j]) / dx * (1.0 + g[j]));
      }
    }
    uy_prev = uy;
  }
  return r;
}

std::pair<double, double> refinement_ratios(const RegularityReport& coarse, const RegularityReport& fine) {
  auto ratio = [](double f, double c) { return c > 0.0 ? f / c : (f == 0.0 ? 1.0 : INFINITY); };
  return {ratio(fine.mixed_sup, coarse.mixed_sup), ratio(fine.second_sup, coarse.second_sup)};
}

DecayCertificate decay_certificate(const std::string& name, const std::vector<double>& x,
                                   const std::vector<double>& series, double slack) {
  same_length(x.size(), series.size(), "decay_certificate");
  if (x.empty()) throw Error(ErrorKind::insufficient_stations, "decay_certificate: empty series");
  DecayCertificate c{name, true, 0.0, 0.0};
  const double s0 = series.front();
  for (std::size_t k = 0; k < x.size(); ++k) {
    double ratio;
    if (s0 > 0.0) {
      ratio = std::exp(x[k] - x.front()) * series[k] / s0;
    } else {
      ratio = series[k] > 0.0 ? INFINITY : 0.0;
    }
    c.max_ratio = std::max(c.max_ratio, ratio);
  }
  c.margin = (1.0 + slack) - c.max_ratio;
  c.pass = c.max_ratio <= 1.0 + slack;
  return c;
}

SeriesFit fit_series(const std::string& name, const std::vector<double>& x, const std::vector<double>& series,
                     double x_lo, double x_hi) {
  same_length(x.size(), series.size(), "fit_series");
  std::vector<double> xs, ys;
  for (std::size_t k = 0; k < x.size(); ++k) {
    if (x[k] >= x_lo - 1e-12 && x[k] <= x_hi + 1e-12) {
      xs.push_back(x[k]);
      ys.push_back(series[k]);
    }
  }
  return SeriesFit{name, fit_log_linear(xs, ys)};
}

std::vector<DiagnosticsRecord> diagnostics_records(const std::vector<VmState>& history,
                                                   const EquilibriumOnGrid& eq, const Grid1D& grid_y) {
  if (history.size() < 2) throw Error(ErrorKind::insufficient_stations, "diagnostics need at least two stations");
  std::vector<PhiState> phis;
  phis.reserve(history.size());
  for (const VmState& s : history) phis.push_back(to_phi(s, eq));
  const EnergySeries e = energy_E(phis, eq);
  const std::vector<PhysicalDecay> pd = physical_decay(history, grid_y);
  std::vector<DiagnosticsRecord> out;
  out.reserve(history.size());
  std::vector<double> u(eq.u.size());
  for (std::size_t k = 0; k < history.size(); ++k) {
    for (std::size_t j = 0; j < u.size(); ++j) u[j] = std::sqrt(std::max(history[k].w[j], 0.0));
    DiagnosticsRecord r;
    const EnergyTerms& t = e.terms[k];
    r.x = history[k].x;
    r.phi_l2 = t.phi_l2;
    r.phi_over_sqrt_u = t.phi_over_sqrt_u;
    r.phi_over_u32 = t.phi_over_u32;
    r.phi_psi_l2 = t.phi_psi_l2;
    r.phi_x_l2 = t.phi_x_l2;
    r.phi_x_psi_l2 = t.phi_x_psi_l2;
    r.phi_x_over_sqrt_u = t.phi_x_over_sqrt_u;
    r.phi_x_over_u32 = t.phi_x_over_u32;
    r.f_sup = functional_f(u, eq.u);
    r.alpha_sup = functional_alpha(u, eq.u);
    r.energy_instant = e.instantaneous[k];
    r.energy_E = e.running_sup[k];
    for (std::size_t j = 0; j < u.size(); ++j) r.u_max_dev = std::max(r.u_max_dev, std::abs(u[j] - eq.u[j]));
    r.u_minus_ubar_H2y = pd[k].u_H2;
    r.u_y_minus_ubar_y_Linf = pd[k].u_y_inf;
    r.b_y_H2y_diff = pd[k].b_y_H2;
    r.alpha_bound_ratio = r.energy_instant > 0.0 ? r.alpha_sup / (std::pow(r.f_sup, 8.5) * r.energy_instant) : 0.0;
    out.push_back(r);
  }
  return out;
}

double alpha_bound_constant(const std::vector<DiagnosticsRecord>& records) {
  double c = 0.0;
  for (const auto& r : records) c = std::max(c, r.alpha_bound_ratio);
  return c;
}

}  // namespace phlab

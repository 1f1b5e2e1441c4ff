#include "phlab/cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "phlab/cli/output.hpp"
#include "phlab/diagnostics.hpp"
#include "phlab/equilibrium.hpp"
#include "phlab/error.hpp"
#include "phlab/numerics/fit.hpp"
#include "phlab/solver_eps.hpp"
#include "phlab/solver_vm.hpp"

namespace phlab::cli {
namespace {

using json = nlohmann::ordered_json;

constexpr double persistence_bound = 1e-6;
constexpr double rate_floor = 0.9;
constexpr double exact_compat_tol = 1e-10;
constexpr double stencil_compat_tol = 1e-6;

bool wants_csv(const RunConfig& c) { return c.output.formats != "json"; }
bool wants_json(const RunConfig& c) { return c.output.formats != "csv"; }

json certificate_json(const std::string& name, bool pass, double margin) {
  return json{{"name", name}, {"pass", pass}, {"margin", margin}};
}

json fit_json(const SeriesFit& f) {
  return json{{"series", f.series}, {"rate", f.fit.rate}, {"amplitude", f.fit.amplitude}, {"r2", f.fit.r_squared}};
}

json summary_head(const RunConfig& c, std::size_t stations) {
  json j;
  j["schema_version"] = schema_version;
  j["config"] = config_json(c);
  j["stations_count"] = stations;
  return j;
}

bool all_pass(const json& certificates) {
  return std::all_of(certificates.begin(), certificates.end(), [](const json& c) { return c["pass"].get<bool>(); });
}

// Fits that are undefined (a nonpositive sample, too few points) are skipped.
void try_fit(json& fits, const std::string& name, const std::vector<double>& x, const std::vector<double>& s,
             double lo, double hi) {
  try {
    fits.push_back(fit_json(fit_series(name, x, s, lo, hi)));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::nonpositive_sample && e.kind() != ErrorKind::invalid_parameter &&
        e.kind() != ErrorKind::degenerate_xs) {
      throw;
    }
  }
}

const std::vector<std::string> record_columns = {
    "x",           "phi_l2",        "phi_over_sqrt_u",   "phi_over_u32",   "phi_psi_l2",
    "phi_x_l2",    "phi_x_psi_l2",  "phi_x_over_sqrt_u", "phi_x_over_u32", "f_sup",
    "alpha_sup",   "energy_instant", "energy_E",         "u_max_dev",      "u_minus_ubar_H2y",
    "u_y_minus_ubar_y_Linf", "b_y_H2y_diff", "alpha_bound_ratio"};

std::vector<double> record_row(const DiagnosticsRecord& r) {
  return {r.x,
          r.phi_l2,
          r.phi_over_sqrt_u,
          r.phi_over_u32,
          r.phi_psi_l2,
          r.phi_x_l2,
          r.phi_x_psi_l2,
          r.phi_x_over_sqrt_u,
          r.phi_x_over_u32,
          r.f_sup,
          r.alpha_sup,
          r.energy_instant,
          r.energy_E,
          r.u_max_dev,
          r.u_minus_ubar_H2y,
          r.u_y_minus_ubar_y_Linf,
          r.b_y_H2y_diff,
          r.alpha_bound_ratio};
}

std::string out_dir(const RunConfig& c) { return c.output.directory; }

int march_vm(const RunConfig& c, std::ostream& log) {
  const InitialProfile profile = make_profile(c);
  const Grid1D gp = psi_grid(c);
  const EquilibriumOnGrid eq = equilibrium_on_psi_grid(gp);
  const VmStepConfig step = step_config(c);
  const VmState w0 = vm_initial_state(profile, gp);

  std::vector<VmState> history;
  if (c.solver == SolverKind::vm_phi) {
    for (const PhiState& s : march(to_phi(w0, eq), c.march.x_end, step).history) history.push_back(to_w(s, eq));
  } else {
    history = march(w0, c.march.x_end, step).history;
  }
  const std::vector<DiagnosticsRecord> records = diagnostics_records(history, eq, diagnostics_grid(c));

  std::vector<double> xs, phi2, q2, e_inst, uh2, uyinf, bh2;
  double max_dev = 0.0;
  for (const auto& r : records) {
    xs.push_back(r.x);
    phi2.push_back(r.phi_l2 * r.phi_l2);
    q2.push_back(r.phi_over_sqrt_u * r.phi_over_sqrt_u);
    e_inst.push_back(r.energy_instant);
    uh2.push_back(r.u_minus_ubar_H2y);
    uyinf.push_back(r.u_y_minus_ubar_y_Linf);
    bh2.push_back(r.b_y_H2y_diff);
    max_dev = std::max(max_dev, r.u_max_dev);
  }

  json certs = json::array();
  json fits = json::array();
  const double lo = c.diagnostics.fit_start;
  const double hi = c.march.x_end;
  if (c.initial_data.family == Family::hartmann) {
    certs.push_back(certificate_json("equilibrium_persistence", max_dev <= persistence_bound, persistence_bound - max_dev));
  } else {
    const DecayCertificate a = decay_certificate("phi_l2_sq", xs, phi2);
    const DecayCertificate b = decay_certificate("phi_over_sqrt_u_sq", xs, q2);
    certs.push_back(certificate_json(a.name, a.pass, a.margin));
    certs.push_back(certificate_json(b.name, b.pass, b.margin));
    try {
      const SeriesFit f = fit_series("phi_l2_sq", xs, phi2, lo, hi);
      certs.push_back(certificate_json("phi_l2_sq_rate", f.fit.rate >= rate_floor, f.fit.rate - rate_floor));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::nonpositive_sample) throw;
      certs.push_back(certificate_json("phi_l2_sq_rate", false, -rate_floor));
    }
  }
  try_fit(fits, "phi_l2_sq", xs, phi2, lo, hi);
  try_fit(fits, "phi_over_sqrt_u_sq", xs, q2, lo, hi);
  try_fit(fits, "energy_instant", xs, e_inst, lo, hi);
  try_fit(fits, "u_minus_ubar_H2y", xs, uh2, lo, hi);
  try_fit(fits, "u_y_minus_ubar_y_Linf", xs, uyinf, lo, hi);
  try_fit(fits, "b_y_H2y_diff", xs, bh2, lo, hi);

  const auto lines = config_lines(c);
  if (wants_csv(c)) {
    CsvTable t{record_columns, {}};
    const auto every = static_cast<std::size_t>(c.diagnostics.record_every);
    for (std::size_t k = 0; k < records.size(); ++k) {
      if (k % every == 0 || k + 1 == records.size()) t.rows.push_back(record_row(records[k]));
    }
    write_csv(output_path(out_dir(c), "stations.csv"), lines, t);
  }
  json s = summary_head(c, records.size());
  s["certificates"] = certs;
  s["fits"] = fits;
  s["max_u_deviation"] = max_dev;
  s["energy_E_final"] = records.back().energy_E;
  s["alpha_bound_constant"] = alpha_bound_constant(records);
  if (wants_json(c)) write_json(output_path(out_dir(c), "summary.json"), s);
  const bool pass = all_pass(certs);
  log << "march: " << records.size() << " stations, max|u-ubar| = " << format_real(max_dev)
      << (pass ? ", certificates pass\n" : ", certificate failure\n");
  return pass ? exit_pass : exit_failure;
}

int march_eps_physical(const RunConfig& c, std::ostream& log) {
  const InitialProfile profile = make_profile(c);
  EpsRunConfig ec = eps_config(c);
  const Grid1D gy = eps_grid_y(ec);
  const auto result = march_eps(phys_initial_state(profile, gy, c.eps), c.march.x_end, ec);
  CsvTable t{{"x", "u_dev_from_ubar_eps", "v_max", "lower_margin", "upper_margin", "floor_margin"}, {}};
  bool bounds_ok = true;
  double worst = INFINITY;
  std::vector<double> xs, dev;
  for (const PhysState& s : result.history) {
    double d = 0.0, vmax = 0.0;
    for (std::size_t j = 0; j < gy.size(); ++j) {
      d = std::max(d, std::abs(s.u[j] - hartmann_u(gy[j]) - c.eps));
      if (!s.v.empty()) vmax = std::max(vmax, std::abs(s.v[j]));
    }
    const BoundReport b = uniform_bound_check(s, c.diagnostics.delta0);
    bounds_ok = bounds_ok && b.holds();
    worst = std::min({worst, b.lower_margin, b.upper_margin, b.floor_margin});
    xs.push_back(s.x);
    dev.push_back(d);
    t.rows.push_back({s.x, d, vmax, b.lower_margin, b.upper_margin, b.floor_margin});
  }
  if (wants_csv(c)) write_csv(output_path(out_dir(c), "stations.csv"), config_lines(c), t);
  json certs = json::array({certificate_json("uniform_bounds", bounds_ok, worst)});
  json fits = json::array();
  try_fit(fits, "u_dev_from_ubar_eps", xs, dev, c.diagnostics.fit_start, c.march.x_end);
  json s = summary_head(c, result.history.size());
  s["certificates"] = certs;
  s["fits"] = fits;
  if (wants_json(c)) write_json(output_path(out_dir(c), "summary.json"), s);
  log << "march (eps = " << format_real(c.eps) << "): " << result.history.size() << " stations\n";
  return bounds_ok ? exit_pass : exit_failure;
}

int ladder(const RunConfig& c, std::ostream& log) {
  const InitialProfile profile = make_profile(c);
  const EpsRunConfig ec = eps_config(c);
  const LadderReport rep = run_ladder(profile, ec, c.march.x_end, false);

  json certs = json::array();
  json bounds = json::array();
  bool bounds_ok = true;
  double worst = INFINITY;
  std::size_t stations = 0;
  const auto lines = config_lines(c);
  for (std::size_t i = 0; i < rep.rungs.size(); ++i) {
    const LadderRung& rung = rep.rungs[i];
    double rung_worst = INFINITY;
    bool rung_ok = true;
    for (const PhysState& s : rung.history) {
      const BoundReport b = uniform_bound_check(s, c.diagnostics.delta0);
      rung_ok = rung_ok && b.holds();
      rung_worst = std::min({rung_worst, b.lower_margin, b.upper_margin, b.floor_margin});
    }
    stations += rung.history.size();
    bounds_ok = bounds_ok && rung_ok;
    worst = std::min(worst, rung_worst);
    bounds.push_back(json{{"eps", rung.eps}, {"holds", rung_ok}, {"worst_margin", rung_worst}});
    if (wants_csv(c)) {
      const PhysState& f = rung.history.back();
      CsvTable t{{"y", "u", "v", "b"}, {}};
      for (std::size_t j = 0; j < f.grid_y.size(); ++j) t.rows.push_back({f.grid_y[j], f.u[j], f.v[j], f.b[j]});
      write_csv(output_path(out_dir(c), "ladder_rung_" + std::to_string(i) + ".csv"), lines, t);
    }
  }
  json fits = json::array();
  if (rep.observed_order) {
    certs.push_back(certificate_json("ladder_monotone", rep.monotone, rep.monotone ? 1.0 : -1.0));
    std::vector<double> le, ld;
    for (std::size_t i = 0; i < rep.rungs.size(); ++i) {
      le.push_back(std::log(rep.rungs[i].eps));
      ld.push_back(std::log(rep.oracle_differences[i]));
    }
    const LinearFit f = fit_linear(le, ld);
    fits.push_back(json{{"series", "oracle_difference_vs_eps"}, {"rate", f.slope},
                        {"amplitude", std::exp(f.intercept)}, {"r2", f.r_squared}});
  }
  certs.push_back(certificate_json("uniform_bounds", bounds_ok, worst));

  json s = summary_head(c, stations);
  s["certificates"] = certs;
  s["fits"] = fits;
  std::vector<double> eps;
  for (const auto& r : rep.rungs) eps.push_back(r.eps);
  s["eps"] = eps;
  s["pairwise_differences"] = rep.pairwise_differences;
  s["oracle_differences"] = rep.oracle_differences;
  if (rep.observed_order) s["observed_order"] = *rep.observed_order;
  s["monotone"] = rep.monotone;
  s["bounds"] = bounds;
  if (wants_json(c)) write_json(output_path(out_dir(c), "ladder.json"), s);
  const bool pass = all_pass(certs);
  log << "ladder: " << rep.rungs.size() << " rungs" << (pass ? ", pass\n" : ", failure\n");
  return pass ? exit_pass : exit_failure;
}

}  // namespace

RunConfig effective_config(const CommandOptions& opts) {
  RunConfig c = opts.config_path ? load_config(*opts.config_path) : RunConfig{};
  if (opts.seed) c.seed = *opts.seed;
  if (opts.out_dir) c.output.directory = *opts.out_dir;
  if (opts.format) {
    if (*opts.format != "csv" && *opts.format != "json" && *opts.format != "both") {
      throw Error(ErrorKind::config_parse, "--format must be csv, json or both");
    }
    c.output.formats = *opts.format;
  }
  validate(c);
  return c;
}

int cmd_steady(const CommandOptions& opts, std::ostream& log) {
  const RunConfig c = effective_config(opts);
  const Grid1D gy = y_grid(c);
  std::vector<double> ys(gy.nodes().begin(), gy.nodes().end());
  for (double landmark : {std::log(2.0), 1.0}) {
    if (landmark <= c.domain.y_max && std::find(ys.begin(), ys.end(), landmark) == ys.end()) ys.push_back(landmark);
  }
  std::sort(ys.begin(), ys.end());
  CsvTable t{{"y", "u_bar", "b_bar", "psi_bar"}, {}};
  for (double y : ys) t.rows.push_back({y, hartmann_u(y), hartmann_b(y), hartmann_psi_of_y(y)});
  if (wants_csv(c)) write_csv(output_path(out_dir(c), "steady.csv"), config_lines(c), t);
  if (wants_json(c)) {
    json s = summary_head(c, 0);
    s["certificates"] = json::array();
    s["fits"] = json::array();
    s["rows"] = t.rows.size();
    write_json(output_path(out_dir(c), "steady.json"), s);
  }
  log << "steady: " << t.rows.size() << " rows\n";
  return exit_pass;
}

int cmd_march(const CommandOptions& opts, std::ostream& log) {
  const RunConfig c = effective_config(opts);
  switch (c.solver) {
    case SolverKind::vm_w:
    case SolverKind::vm_phi: return march_vm(c, log);
    case SolverKind::eps_physical: return march_eps_physical(c, log);
    case SolverKind::ladder: return ladder(c, log);
  }
  return exit_error;
}

int cmd_ladder(const CommandOptions& opts, std::ostream& log) { return ladder(effective_config(opts), log); }

int cmd_check(const CommandOptions& opts, std::ostream& log) {
  const RunConfig c = effective_config(opts);
  const InitialProfile profile = make_profile(c);
  CompatibilityReport r = check_compatibility(profile, exact_compat_tol, 2);
  const double tol = r.from_stencils ? stencil_compat_tol : exact_compat_tol;
  const bool compat_ok = r.passes(tol);
  if (compat_ok && !r.from_stencils) r = check_compatibility(profile, tol, 4);
  const HardySuiteReport h = hardy_suite(c.seed);

  double compat_margin = std::min(r.slope, tol - std::max({std::abs(r.residual_order0), std::abs(r.residual_order1),
                                                          std::abs(r.residual_order2)}));
  json certs = json::array({certificate_json("compatibility_orders_0_2", compat_ok, compat_margin),
                            certificate_json("hardy_suite", h.all_pass(), 1.02 - h.worst_ratio)});
  json compat{{"residual_order0", r.residual_order0},
              {"slope", r.slope},
              {"residual_order1", r.residual_order1},
              {"residual_order2", r.residual_order2},
              {"from_stencils", r.from_stencils},
              {"tolerance", tol},
              {"pass", compat_ok}};
  if (r.residual_order3) compat["residual_order3"] = *r.residual_order3;
  if (r.residual_order4) compat["residual_order4"] = *r.residual_order4;

  json s = summary_head(c, 0);
  s["certificates"] = certs;
  s["fits"] = json::array();
  s["compatibility"] = compat;
  s["hardy"] = json{{"seed", h.seed}, {"draws", h.draws}, {"checks", h.checks}, {"passed", h.passed},
                    {"worst_ratio", h.worst_ratio}};
  if (wants_json(c)) write_json(output_path(out_dir(c), "check.json"), s);
  if (wants_csv(c)) {
    CsvTable t{{"order", "residual"}, {{0, r.residual_order0}, {1, r.residual_order1}, {2, r.residual_order2}}};
    if (r.residual_order3) t.rows.push_back({3, *r.residual_order3});
    if (r.residual_order4) t.rows.push_back({4, *r.residual_order4});
    write_csv(output_path(out_dir(c), "compatibility.csv"), config_lines(c), t);
  }
  const bool pass = all_pass(certs);
  log << "check: compatibility " << (compat_ok ? "pass" : "FAIL") << ", hardy " << h.passed << "/" << h.checks << "\n";
  return pass ? exit_pass : exit_failure;
}

int cmd_decay_fit(const CommandOptions& opts, std::ostream& log) {
  if (!opts.input) throw Error(ErrorKind::config_parse, "decay-fit needs --input <stations.csv>");
  const RunConfig c = effective_config(opts);
  const CsvTable t = read_csv(*opts.input);
  const auto xcol = std::find(t.columns.begin(), t.columns.end(), "x");
  if (xcol == t.columns.end()) throw Error(ErrorKind::config_parse, "input table has no x column");
  const auto xi = static_cast<std::size_t>(xcol - t.columns.begin());
  std::vector<double> xs;
  for (const auto& row : t.rows) xs.push_back(row[xi]);
  const double hi = xs.empty() ? 0.0 : xs.back();
  json fits = json::array();
  for (std::size_t k = 0; k < t.columns.size(); ++k) {
    if (k == xi) continue;
    std::vector<double> s;
    for (const auto& row : t.rows) s.push_back(row[k]);
    try_fit(fits, t.columns[k], xs, s, c.diagnostics.fit_start, hi);
  }
  json s = summary_head(c, t.rows.size());
  s["certificates"] = json::array();
  s["fits"] = fits;
  s["input"] = *opts.input;
  write_json(output_path(out_dir(c), "decay_fit.json"), s);
  log << "decay-fit: " << fits.size() << " series fitted\n";
  return exit_pass;
}

int run_command(const std::string& name, const CommandOptions& opts, std::ostream& log, std::ostream& err) {
  try {
    if (name == "steady") return cmd_steady(opts, log);
    if (name == "march") return cmd_march(opts, log);
    if (name == "ladder") return cmd_ladder(opts, log);
    if (name == "check") return cmd_check(opts, log);
    if (name == "decay-fit") return cmd_decay_fit(opts, log);
    err << "error: unknown subcommand '" << name << "'\n";
    return exit_error;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return exit_error;
  }
}

}  // namespace phlab::cli

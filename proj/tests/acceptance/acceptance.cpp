// Acceptance driver: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "phlab/cli/commands.hpp"
#include "phlab/diagnostics.hpp"
#include "phlab/equilibrium.hpp"
#include "phlab/error.hpp"
#include "phlab/numerics.hpp"
#include "phlab/profiles.hpp"
#include "phlab/solver_eps.hpp"
#include "phlab/solver_vm.hpp"
#include "phlab/transforms.hpp"

using namespace phlab;
namespace fs = std::filesystem;

namespace {

// pinned tolerances
constexpr double c1_bound = 1e-6;
constexpr double c1_runtime_s = 5.0;
constexpr double c2_slack = 0.05;
constexpr double c2_rate_floor = 0.9;
constexpr double c3_rate_floor = 0.9;
constexpr double c3_r2_floor = 0.99;
constexpr double c3_fit_lo = 0.5, c3_fit_hi = 5.0;
constexpr double c4_order_floor = 0.8;
constexpr double c4_runtime_s = 60.0;
constexpr double c5_delta0 = 0.5;
constexpr double c6_tol_factor = 10.0;
constexpr double c6_consistency_factor = 2.0;
constexpr double c7_slack = 0.02;
constexpr double c7_closed_tol = 1e-3;
constexpr double c8_exact_tol = 1e-10;
constexpr double c8_stencil_tol = 1e-6;
constexpr double c8_amplitude = 0.05;
constexpr double c9_spatial_floor = 1.8;
constexpr double c9_marching_floor = 0.9;

constexpr std::size_t psi_count = 2001;
constexpr double amplitude = 0.05;

const double psi_max = hartmann_psi_of_y(15.0);

Grid1D psi_grid(std::size_t n = psi_count) { return make_graded_grid(psi_max, n, 2.0); }

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double max_u_dev(const VmState& s, const EquilibriumOnGrid& eq) {
  double m = 0.0;
  for (std::size_t j = 0; j < s.w.size(); ++j) m = std::max(m, std::abs(std::sqrt(std::max(s.w[j], 0.0)) - eq.u[j]));
  return m;
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("error: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("C%-2d %s  %s  (%s)\n", id, o.pass ? "PASS" : "FAIL", title.c_str(), o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double a) {
  char b[128];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

// shared perturbation run for criteria 2 and 3
struct QuarticRun {
  Grid1D grid = psi_grid();
  EquilibriumOnGrid eq = equilibrium_on_psi_grid(grid);
  std::vector<VmState> history;
};

const QuarticRun& quartic_run() {
  static const QuarticRun run = [] {
    QuarticRun r;
    r.history = march(vm_initial_state(InitialProfile::perturbed(amplitude, 4), r.grid), 5.0, VmStepConfig{}).history;
    return r;
  }();
  return run;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main() {
  report(1, "equilibrium fixed point in both forms to x = 2", [] {
    const auto t0 = std::chrono::steady_clock::now();
    const Grid1D g = psi_grid();
    const auto eq = equilibrium_on_psi_grid(g);
    VmStepConfig c;
    const auto w = march(VmState{0.0, g, eq.w, 1.0}, 2.0, c);
    c.form = VmForm::phi_form;
    const auto p = march(to_phi(VmState{0.0, g, eq.w, 1.0}, eq), 2.0, c);
    double dw = 0.0, dp = 0.0;
    for (const auto& s : w.history) dw = std::max(dw, max_u_dev(s, eq));
    for (const auto& s : p.history) dp = std::max(dp, max_u_dev(to_w(s, eq), eq));
    const double t = seconds_since(t0);
    return Outcome{dw <= c1_bound && dp <= c1_bound && t < c1_runtime_s,
                   fmt("w-form %.3e", dw) + fmt(", phi-form %.3e", dp) + fmt(", bound 1e-6, %.2f s", t)};
  });

  report(2, "exponential decay certificates for phi and phi/sqrt(u)", [] {
    const auto& r = quartic_run();
    std::vector<PhiState> phis;
    for (const auto& s : r.history) phis.push_back(to_phi(s, r.eq));
    const auto e = energy_E(phis, r.eq);
    std::vector<double> phi2, q2;
    for (const auto& t : e.terms) {
      phi2.push_back(t.phi_l2 * t.phi_l2);
      q2.push_back(t.phi_over_sqrt_u * t.phi_over_sqrt_u);
    }
    const auto a = decay_certificate("phi", e.x, phi2, c2_slack);
    const auto b = decay_certificate("phi_over_sqrt_u", e.x, q2, c2_slack);
    const auto f = fit_series("phi", e.x, phi2, 0.0, 5.0).fit;
    return Outcome{a.pass && b.pass && f.rate >= c2_rate_floor,
                   fmt("max ratio %.4f", a.max_ratio) + fmt(" / %.4f", b.max_ratio) + fmt(" <= 1.05, rate %.3f", f.rate) +
                       " >= 0.9"};
  });

  report(3, "physical-variable decay of u, u_y and b_y", [] {
    const auto& r = quartic_run();
    const auto d = physical_decay(r.history, make_graded_grid(10.0, 2001, 1.0));
    std::vector<double> x, s[3];
    for (const auto& p : d) {
      x.push_back(p.x);
      s[0].push_back(p.u_H2);
      s[1].push_back(p.u_y_inf);
      s[2].push_back(p.b_y_H2);
    }
    bool ok = true;
    std::string detail;
    const char* names[3] = {"u H2", "u_y Linf", "b_y H2"};
    for (int k = 0; k < 3; ++k) {
      const auto f = fit_series(names[k], x, s[k], c3_fit_lo, c3_fit_hi).fit;
      ok = ok && f.rate >= c3_rate_floor && f.r_squared >= c3_r2_floor;
      detail += std::string(k ? ", " : "") + names[k] + fmt(" rate %.3f", f.rate) + fmt(" r2 %.5f", f.r_squared);
    }
    return Outcome{ok, detail};
  });

  static std::optional<LadderReport> ladder;
  report(4, "eps-ladder converges to the von-Mises oracle", [] {
    const auto t0 = std::chrono::steady_clock::now();
    ladder = run_ladder(InitialProfile::hartmann(), EpsRunConfig{}, 1.0, false);
    const double t = seconds_since(t0);
    const auto& d = ladder->oracle_differences;
    bool decreasing = d.size() == 3;
    for (std::size_t i = 1; i < d.size(); ++i) decreasing = decreasing && d[i] < d[i - 1];
    const double order = ladder->observed_order.value_or(0.0);
    return Outcome{decreasing && order >= c4_order_floor && t < c4_runtime_s,
                   fmt("differences %.4g", d.at(0)) + fmt(", %.4g", d.at(1)) + fmt(", %.4g", d.at(2)) +
                       fmt(", order %.3f", order) + fmt(" >= 0.8, %.2f s", t)};
  });

  report(5, "uniform bounds y/4 <= u <= 2(y + eps) and u >= delta0/4", [] {
    if (!ladder) return Outcome{false, "ladder run unavailable"};
    bool ok = true;
    double worst = INFINITY;
    std::size_t checked = 0;
    for (const auto& rung : ladder->rungs) {
      for (const auto& s : rung.history) {
        const auto b = uniform_bound_check(s, c5_delta0);
        ok = ok && b.holds();
        worst = std::min({worst, b.lower_margin, b.upper_margin, b.floor_margin});
        ++checked;
      }
    }
    return Outcome{ok && checked > 0, fmt("min margin %.4g", worst) + fmt(" over %.0f stations", double(checked))};
  });

  report(6, "w-form and phi-form marches agree", [] {
    const Grid1D g = psi_grid();
    const auto eq = equilibrium_on_psi_grid(g);
    VmStepConfig c;
    // consistency bound: drift of the discrete w-form away from w_bar
    double drift = 0.0;
    for (const auto& s : march(VmState{0.0, g, eq.w, 1.0}, 2.0, c).history) {
      for (std::size_t j = 0; j < g.size(); ++j) drift = std::max(drift, std::abs(s.w[j] - eq.w[j]));
    }
    const auto w0 = vm_initial_state(InitialProfile::perturbed(amplitude, 4), g);
    const auto wr = march(w0, 2.0, c);
    c.form = VmForm::phi_form;
    const auto pr = march(to_phi(w0, eq), 2.0, c);
    double gap = 0.0;
    for (std::size_t k = 0; k < wr.history.size(); ++k) {
      for (std::size_t j = 0; j < g.size(); ++j) {
        gap = std::max(gap, std::abs(pr.history[k].phi[j] - (wr.history[k].w[j] - eq.w[j])));
      }
    }
    const double bound = c6_tol_factor * c.picard_tol + c6_consistency_factor * drift;
    return Outcome{wr.history.size() == pr.history.size() && gap <= bound,
                   fmt("max gap %.4e", gap) + fmt(" <= %.4e", bound)};
  });

  report(7, "Hardy inequalities on the randomized suite", [] {
    const auto rep = hardy_suite(42, 100, {0.0, 0.5, 1.0}, c7_slack);
    const Grid1D g = make_graded_grid(30.0, 6001, 1.0);
    std::vector<double> f(g.size());
    for (std::size_t j = 0; j < g.size(); ++j) f[j] = std::exp(-g[j]);
    f.back() = 0.0;
    const auto h = hardy_check(g, f, 0.0, 1.0, c7_slack);
    const bool closed = std::abs(h.lhs - 0.70711) <= c7_closed_tol && std::abs(h.rhs - 2.23607) <= c7_closed_tol;
    return Outcome{rep.all_pass() && rep.checks == 300 && closed && h.holds,
                   std::to_string(rep.passed) + "/" + std::to_string(rep.checks) + fmt(" pass, e^{-y}: lhs %.5f", h.lhs) +
                       fmt(" rhs %.5f", h.rhs)};
  });

  report(8, "compatibility checker", [] {
    bool ok = true;
    double worst_exact = 0.0, worst_stencil = 0.0;
    for (const auto& p : {InitialProfile::hartmann(), InitialProfile::perturbed(c8_amplitude, 4)}) {
      const auto e = check_compatibility(p, c8_exact_tol);
      const auto s = check_compatibility(p, c8_stencil_tol, 2, DerivativeSource::stencil);
      ok = ok && e.passes(c8_exact_tol) && s.passes(c8_stencil_tol);
      worst_exact = std::max({worst_exact, std::abs(e.residual_order0), std::abs(e.residual_order1), std::abs(e.residual_order2)});
      worst_stencil =
          std::max({worst_stencil, std::abs(s.residual_order0), std::abs(s.residual_order1), std::abs(s.residual_order2)});
    }
    const auto q = InitialProfile::perturbed(c8_amplitude, 2);
    const auto qe = check_compatibility(q, c8_exact_tol);
    const auto qs = check_compatibility(q, c8_stencil_tol, 2, DerivativeSource::stencil);
    const double target = -2.0 * c8_amplitude;
    const bool fails = !qe.passes(c8_exact_tol) && std::abs(qe.residual_order1 - target) <= c8_stencil_tol &&
                       !qs.passes(c8_stencil_tol) && std::abs(qs.residual_order1 - target) <= c8_stencil_tol;
    return Outcome{ok && fails, fmt("exact %.2e", worst_exact) + fmt(", stencil %.2e", worst_stencil) +
                                    fmt(", y^2 family order-1 residual %.9f", qe.residual_order1)};
  });

  report(9, "grid convergence orders on the perturbed problem at x = 1", [] {
    const auto p = InitialProfile::perturbed(amplitude, 4);
    auto run = [&](std::size_t n, double dx) {
      VmStepConfig c;
      c.dx = dx;
      return march(vm_initial_state(p, make_graded_grid(p.stream_function(15.0), n, 2.0)), 1.0, c).final_state.w;
    };
    auto diff = [](const std::vector<double>& a, const std::vector<double>& b, std::size_t stride) {
      double m = 0.0;
      for (std::size_t j = 0; j < a.size(); ++j) m = std::max(m, std::abs(a[j] - b[j * stride]));
      return m;
    };
    const auto c = run(251, 0.01), m = run(501, 0.01), f = run(1001, 0.01);
    const double spatial = std::log2(diff(c, m, 2) / diff(m, f, 2));
    const auto t1 = run(1001, 0.04), t2 = run(1001, 0.02), t3 = run(1001, 0.01);
    const double marching = std::log2(diff(t1, t2, 1) / diff(t2, t3, 1));
    return Outcome{spatial >= c9_spatial_floor && marching >= c9_marching_floor,
                   fmt("spatial %.3f", spatial) + fmt(" >= 1.8, marching %.3f", marching) + " >= 0.9"};
  });

  report(10, "repeated subcommand runs are byte identical", [] {
    const fs::path dir = fs::temp_directory_path() / "phlab_acceptance_determinism";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const fs::path cfg = dir / "run.cfg";
    std::ofstream(cfg) << "initial_data.family = perturbed_quartic\nmarch.x_end = 1\n"
                          "grid.count = 801\ngrid.y_count = 801\ndiagnostics.y_count = 801\n";
    struct Job {
      std::string cmd;
      std::vector<std::string> files;
    };
    const std::vector<Job> jobs{{"steady", {"steady.csv", "steady.json"}},
                                {"march", {"stations.csv", "summary.json"}},
                                {"decay-fit", {"decay_fit.json"}},
                                {"ladder", {"ladder.json", "ladder_rung_0.csv", "ladder_rung_1.csv", "ladder_rung_2.csv"}},
                                {"check", {"check.json", "compatibility.csv"}}};
    std::size_t compared = 0;
    for (const auto& job : jobs) {
      cli::CommandOptions o;
      o.config_path = cfg.string();
      o.out_dir = dir.string();
      if (job.cmd == "decay-fit") o.input = (dir / "stations.csv").string();
      std::vector<std::string> first;
      for (int rep = 0; rep < 2; ++rep) {
        std::ostringstream log, err;
        const int code = cli::run_command(job.cmd, o, log, err);
        if (code != cli::exit_pass) return Outcome{false, job.cmd + " exited " + std::to_string(code) + " " + err.str()};
        for (std::size_t i = 0; i < job.files.size(); ++i) {
          const std::string bytes = slurp(dir / job.files[i]);
          if (bytes.empty()) return Outcome{false, job.files[i] + " missing"};
          if (rep == 0) {
            first.push_back(bytes);
          } else if (bytes != first[i]) {
            return Outcome{false, job.files[i] + " differs between runs"};
          } else {
            ++compared;
          }
        }
      }
    }
    return Outcome{true, std::to_string(compared) + " files identical across 5 subcommands"};
  });

  std::printf("%s: %d of 10 criteria failed\n", failures ? "FAIL" : "PASS", failures);
  return failures ? 1 : 0;
}

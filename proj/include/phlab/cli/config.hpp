#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "phlab/profiles.hpp"
#include "phlab/solver_eps.hpp"
#include "phlab/solver_vm.hpp"

namespace phlab::cli {

enum class SolverKind { vm_w, vm_phi, eps_physical, ladder };
enum class Family { hartmann, perturbed_quartic, perturbed_quadratic, custom_samples };

struct RunConfig {
  SolverKind solver = SolverKind::vm_w;
  struct {
    double y_max = 15.0;
    std::optional<double> psi_max;  // default psi_bar(y_max)
  } domain;
  struct {
    std::size_t count = 2001;
    double grading_exponent = 2.0;
    std::size_t y_count = 2001;
    double y_grading_exponent = 1.0;
  } grid;
  struct {
    double dx = 0.01;
    double x_end = 5.0;
    double picard_tol = 1e-10;
    int picard_max = 50;
  } march;
  struct {
    Family family = Family::hartmann;
    double amplitude = 0.05;
    std::string custom_path;
  } initial_data;
  std::vector<double> eps_ladder{0.1, 0.05, 0.025};
  double eps = 0.05;
  struct {
    int weight_power = 1;
    int record_every = 1;
    double eta0 = 0.25;
    double delta0 = 0.5;
    double y_max = 10.0;
    std::size_t y_count = 2001;
    double fit_start = 0.5;
  } diagnostics;
  struct {
    std::string directory = ".";
    std::string formats = "both";
  } output;
  std::uint64_t seed = 42;
};

/// Flat `key = value` lines, dotted keys, '#' comments. Unknown keys and
/// malformed lines raise config-parse with the line number.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::string& path);

/// Range checks and initial-data validation; throws config-parse.
void validate(const RunConfig& cfg);

/// Canonical `key = value` listing of every effective setting.
std::vector<std::string> config_lines(const RunConfig& cfg);
nlohmann::ordered_json config_json(const RunConfig& cfg);

std::string to_string(SolverKind s);
std::string to_string(Family f);

double psi_max(const RunConfig& cfg);
Grid1D psi_grid(const RunConfig& cfg);
Grid1D y_grid(const RunConfig& cfg);
Grid1D diagnostics_grid(const RunConfig& cfg);
VmStepConfig step_config(const RunConfig& cfg);
EpsRunConfig eps_config(const RunConfig& cfg);
InitialProfile make_profile(const RunConfig& cfg);

}  // namespace phlab::cli

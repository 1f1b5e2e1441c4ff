#include "phlab/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "phlab/equilibrium.hpp"
#include "phlab/error.hpp"
#include "phlab/cli/output.hpp"

namespace phlab::cli {
namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

[[noreturn]] void bad(const std::string& msg, std::size_t line) {
  throw Error(ErrorKind::config_parse, msg, line);
}

double parse_double(std::string_view v, std::size_t line) {
  double x = 0.0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) bad("not a number: '" + std::string(v) + "'", line);
  return x;
}

long long parse_int(std::string_view v, std::size_t line) {
  long long x = 0;
  const auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
  if (ec != std::errc() || p != v.data() + v.size()) bad("not an integer: '" + std::string(v) + "'", line);
  return x;
}

std::size_t parse_count(std::string_view v, std::size_t line) {
  const long long x = parse_int(v, line);
  if (x < 0) bad("count must be nonnegative", line);
  return static_cast<std::size_t>(x);
}

std::vector<double> parse_list(std::string_view v, std::size_t line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= v.size()) {
    const auto comma = v.find(',', start);
    const auto item = trim(v.substr(start, comma == std::string_view::npos ? v.size() - start : comma - start));
    if (item.empty()) bad("empty list item", line);
    out.push_back(parse_double(item, line));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

using Setter = std::function<void(RunConfig&, std::string_view, std::size_t)>;

const std::map<std::string, Setter, std::less<>>& setters() {
  static const std::map<std::string, Setter, std::less<>> table = {
      {"solver",
       [](RunConfig& c, std::string_view v, std::size_t l) {
         if (v == "vm_w") c.solver = SolverKind::vm_w;
         else if (v == "vm_phi") c.solver = SolverKind::vm_phi;
         else if (v == "eps_physical") c.solver = SolverKind::eps_physical;
         else if (v == "ladder") c.solver = SolverKind::ladder;
         else bad("unknown solver '" + std::string(v) + "'", l);
       }},
      {"domain.y_max", [](RunConfig& c, std::string_view v, std::size_t l) { c.domain.y_max = parse_double(v, l); }},
      {"domain.psi_max", [](RunConfig& c, std::string_view v, std::size_t l) { c.domain.psi_max = parse_double(v, l); }},
      {"grid.count", [](RunConfig& c, std::string_view v, std::size_t l) { c.grid.count = parse_count(v, l); }},
      {"grid.grading_exponent",
       [](RunConfig& c, std::string_view v, std::size_t l) { c.grid.grading_exponent = parse_double(v, l); }},
      {"grid.y_count", [](RunConfig& c, std::string_view v, std::size_t l) { c.grid.y_count = parse_count(v, l); }},
      {"grid.y_grading_exponent",
       [](RunConfig& c, std::string_view v, std::size_t l) { c.grid.y_grading_exponent = parse_double(v, l); }},
      {"march.dx", [](RunConfig& c, std::string_view v, std::size_t l) { c.march.dx = parse_double(v, l); }},
      {"march.x_end", [](RunConfig& c, std::string_view v, std::size_t l) { c.march.x_end = parse_double(v, l); }},
      {"march.picard_tol", [](RunConfig& c, std::string_view v, std::size_t l) { c.march.picard_tol = parse_double(v, l); }},
      {"march.picard_max",
       [](RunConfig& c, std::string_view v, std::size_t l) { c.march.picard_max = static_cast<int>(parse_int(v, l)); }},
      {"initial_data.family",
       [](RunConfig& c, std::string_view v, std::size_t l) {
         if (v == "hartmann") c.initial_data.family = Family::hartmann;
         else if (v == "perturbed_quartic") c.initial_data.family = Family::perturbed_quartic;
         else if (v == "perturbed_quadratic") c.initial_data.family = Family::perturbed_quadratic;
         else if (v == "custom_samples") c.initial_data.family = Family::custom_samples;
         else bad("unknown initial_data.family '" + std::string(v) + "'", l);
       }},
      {"initial_data.amplitude",
       [](RunConfig& c, std::string_view v, std::size_t l) { c.initial_data.amplitude = parse_double(v, l); }},
      {"initial_data.custom_path",
       [](RunConfig& c, std::string_view v, std::size_t) { c.initial_data.custom_path = std::string(v); }},
      {"eps_ladder", [](RunConfig& c, std::string_view v, std::size_t l) { c.eps_ladder = parse_list(v, l); }},
      {"eps", [](RunConfig& c, std::string_view v, std::size_t l) { c.eps = parse_double(v, l); }},
      {"diagnostics.weight_power",
       [](RunConfig& c, std::string_view v, std::size_t l) { c.diagnostics.weight_power = static_cast<int>(parse_int(v, l)); }},
      {"diagnostics.record_every",
       [](RunConfig& c, std::string_view v, std::size_t l) { c.diagnostics.record_every = static_cast<int>(parse_int(v, l)); }},
      {"diagnostics.eta0", [](RunConfig& c, std::string_view v, std::size_t l) { c.diagnostics.eta0 = parse_double(v, l); }},
      {"diagnostics.delta0", [](RunConfig& c, std::string_view v, std::size_t l) { c.diagnostics.delta0 = parse_double(v, l); }},
      {"diagnostics.y_max", [](RunConfig& c, std::string_view v, std::size_t l) { c.diagnostics.y_max = parse_double(v, l); }},
      {"diagnostics.y_count", [](RunConfig& c, std::string_view v, std::size_t l) { c.diagnostics.y_count = parse_count(v, l); }},
      {"diagnostics.fit_start",
       [](RunConfig& c, std::string_view v, std::size_t l) { c.diagnostics.fit_start = parse_double(v, l); }},
      {"output.directory", [](RunConfig& c, std::string_view v, std::size_t) { c.output.directory = std::string(v); }},
      {"output.formats",
       [](RunConfig& c, std::string_view v, std::size_t l) {
         if (v != "csv" && v != "json" && v != "both") bad("output.formats must be csv, json or both", l);
         c.output.formats = std::string(v);
       }},
      {"seed",
       [](RunConfig& c, std::string_view v, std::size_t l) {
         const long long s = parse_int(v, l);
         if (s < 0) bad("seed must be nonnegative", l);
         c.seed = static_cast<std::uint64_t>(s);
       }},
  };
  return table;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw Error(ErrorKind::config_parse, msg);
}

std::vector<double> read_samples(const std::string& path, std::vector<double>* ys) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::io_error, "cannot open samples file '" + path + "'");
  std::vector<double> us;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    auto t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto comma = t.find(',');
    if (comma == std::string_view::npos) bad("samples need two columns y,u", row);
    const auto a = trim(t.substr(0, comma));
    const auto b = trim(t.substr(comma + 1));
    double y = 0.0, u = 0.0;
    const auto ra = std::from_chars(a.data(), a.data() + a.size(), y);
    const auto rb = std::from_chars(b.data(), b.data() + b.size(), u);
    if (ra.ec != std::errc() || rb.ec != std::errc()) {
      if (ys->empty()) continue;  // header row
      bad("malformed sample row", row);
    }
    ys->push_back(y);
    us.push_back(u);
  }
  return us;
}

// Shortest round-trip form for the config echo.
std::string shortest(double x) {
  char buf[64];
  const auto [p, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return ec == std::errc() ? std::string(buf, p) : format_real(x);
}

}  // namespace

RunConfig parse_config(std::string_view text) {
  RunConfig cfg;
  std::set<std::string, std::less<>> seen;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) bad("expected 'key = value'", line_no);
    const auto key = trim(line.substr(0, eq));
    const auto value = trim(line.substr(eq + 1));
    if (key.empty()) bad("missing key", line_no);
    if (value.empty()) bad("missing value for '" + std::string(key) + "'", line_no);
    const auto it = setters().find(key);
    if (it == setters().end()) bad("unknown key '" + std::string(key) + "'", line_no);
    if (!seen.insert(std::string(key)).second) bad("duplicate key '" + std::string(key) + "'", line_no);
    it->second(cfg, value, line_no);
  }
  if (seen.empty()) throw Error(ErrorKind::config_parse, "config contains no settings");
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io_error, "cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

void validate(const RunConfig& c) {
  require(c.domain.y_max > 0.0, "domain.y_max must be positive");
  require(!c.domain.psi_max || (*c.domain.psi_max > 0.0), "domain.psi_max must be positive");
  require(c.grid.count >= Grid1D::min_count && c.grid.y_count >= Grid1D::min_count, "grid counts must be >= 8");
  require(c.grid.grading_exponent >= 1.0 && c.grid.y_grading_exponent >= 1.0, "grading exponents must be >= 1");
  require(c.march.dx > 0.0, "march.dx must be positive");
  require(c.march.x_end > 0.0, "march.x_end must be positive");
  require(c.march.picard_tol > 0.0, "march.picard_tol must be positive");
  require(c.march.picard_max >= 1, "march.picard_max must be >= 1");
  require(c.eps > 0.0, "eps must be positive");
  require(!c.eps_ladder.empty(), "eps_ladder must not be empty");
  for (std::size_t i = 0; i < c.eps_ladder.size(); ++i) {
    require(c.eps_ladder[i] > 0.0, "eps_ladder values must be positive");
    require(i == 0 || c.eps_ladder[i] < c.eps_ladder[i - 1], "eps_ladder must be strictly decreasing");
  }
  require(c.diagnostics.weight_power >= 0, "diagnostics.weight_power must be >= 0");
  require(c.diagnostics.record_every >= 1, "diagnostics.record_every must be >= 1");
  require(c.diagnostics.eta0 > 0.0 && c.diagnostics.delta0 > 0.0, "diagnostics.eta0 and delta0 must be positive");
  require(c.diagnostics.delta0 <= c.domain.y_max, "diagnostics.delta0 must not exceed domain.y_max");
  require(c.diagnostics.y_max > 0.0 && c.diagnostics.y_max < c.domain.y_max,
          "diagnostics.y_max must lie inside the physical domain");
  require(c.diagnostics.y_count >= Grid1D::min_count, "diagnostics.y_count must be >= 8");
  require(c.diagnostics.fit_start >= 0.0 && c.diagnostics.fit_start < c.march.x_end,
          "diagnostics.fit_start must lie in [0, x_end)");
  if (c.initial_data.family == Family::custom_samples) {
    require(!c.initial_data.custom_path.empty(), "custom_samples needs initial_data.custom_path");
  }
  try {
    make_profile(c).validate(c.domain.y_max);
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::io_error || e.kind() == ErrorKind::config_parse) throw;
    throw Error(ErrorKind::config_parse, std::string("initial data rejected: ") + e.what());
  }
}

std::string to_string(SolverKind s) {
  switch (s) {
    case SolverKind::vm_w: return "vm_w";
    case SolverKind::vm_phi: return "vm_phi";
    case SolverKind::eps_physical: return "eps_physical";
    case SolverKind::ladder: return "ladder";
  }
  return "?";
}

std::string to_string(Family f) {
  switch (f) {
    case Family::hartmann: return "hartmann";
    case Family::perturbed_quartic: return "perturbed_quartic";
    case Family::perturbed_quadratic: return "perturbed_quadratic";
    case Family::custom_samples: return "custom_samples";
  }
  return "?";
}

std::vector<std::string> config_lines(const RunConfig& c) {
  std::string ladder;
  for (std::size_t i = 0; i < c.eps_ladder.size(); ++i) ladder += (i ? ", " : "") + shortest(c.eps_ladder[i]);
  std::vector<std::string> lines{
      "solver = " + to_string(c.solver),
      "domain.y_max = " + shortest(c.domain.y_max),
      "domain.psi_max = " + shortest(psi_max(c)),
      "grid.count = " + std::to_string(c.grid.count),
      "grid.grading_exponent = " + shortest(c.grid.grading_exponent),
      "grid.y_count = " + std::to_string(c.grid.y_count),
      "grid.y_grading_exponent = " + shortest(c.grid.y_grading_exponent),
      "march.dx = " + shortest(c.march.dx),
      "march.x_end = " + shortest(c.march.x_end),
      "march.picard_tol = " + shortest(c.march.picard_tol),
      "march.picard_max = " + std::to_string(c.march.picard_max),
      "initial_data.family = " + to_string(c.initial_data.family),
      "initial_data.amplitude = " + shortest(c.initial_data.amplitude),
      "initial_data.custom_path = " + c.initial_data.custom_path,
      "eps_ladder = " + ladder,
      "eps = " + shortest(c.eps),
      "diagnostics.weight_power = " + std::to_string(c.diagnostics.weight_power),
      "diagnostics.record_every = " + std::to_string(c.diagnostics.record_every),
      "diagnostics.eta0 = " + shortest(c.diagnostics.eta0),
      "diagnostics.delta0 = " + shortest(c.diagnostics.delta0),
      "diagnostics.y_max = " + shortest(c.diagnostics.y_max),
      "diagnostics.y_count = " + std::to_string(c.diagnostics.y_count),
      "diagnostics.fit_start = " + shortest(c.diagnostics.fit_start),
      "output.directory = " + c.output.directory,
      "output.formats = " + c.output.formats,
      "seed = " + std::to_string(c.seed),
  };
  // an unset path has no parseable form
  if (c.initial_data.custom_path.empty()) {
    std::erase_if(lines, [](const std::string& l) { return l.starts_with("initial_data.custom_path"); });
  }
  return lines;
}

nlohmann::ordered_json config_json(const RunConfig& c) {
  nlohmann::ordered_json j;
  j["solver"] = to_string(c.solver);
  j["domain"] = {{"y_max", c.domain.y_max}, {"psi_max", psi_max(c)}};
  j["grid"] = {{"count", c.grid.count},
               {"grading_exponent", c.grid.grading_exponent},
               {"y_count", c.grid.y_count},
               {"y_grading_exponent", c.grid.y_grading_exponent}};
  j["march"] = {{"dx", c.march.dx},
                {"x_end", c.march.x_end},
                {"picard_tol", c.march.picard_tol},
                {"picard_max", c.march.picard_max}};
  j["initial_data"] = {{"family", to_string(c.initial_data.family)},
                       {"amplitude", c.initial_data.amplitude},
                       {"custom_path", c.initial_data.custom_path}};
  j["eps_ladder"] = c.eps_ladder;
  j["eps"] = c.eps;
  j["diagnostics"] = {{"weight_power", c.diagnostics.weight_power},
                      {"record_every", c.diagnostics.record_every},
                      {"eta0", c.diagnostics.eta0},
                      {"delta0", c.diagnostics.delta0},
                      {"y_max", c.diagnostics.y_max},
                      {"y_count", c.diagnostics.y_count},
                      {"fit_start", c.diagnostics.fit_start}};
  j["output"] = {{"directory", c.output.directory}, {"formats", c.output.formats}};
  j["seed"] = c.seed;
  return j;
}

double psi_max(const RunConfig& c) { return c.domain.psi_max.value_or(hartmann_psi_of_y(c.domain.y_max)); }

Grid1D psi_grid(const RunConfig& c) { return Grid1D::graded(psi_max(c), c.grid.count, c.grid.grading_exponent); }

Grid1D y_grid(const RunConfig& c) { return Grid1D::graded(c.domain.y_max, c.grid.y_count, c.grid.y_grading_exponent); }

Grid1D diagnostics_grid(const RunConfig& c) { return Grid1D::graded(c.diagnostics.y_max, c.diagnostics.y_count, 1.0); }

VmStepConfig step_config(const RunConfig& c) {
  VmStepConfig s;
  s.dx = c.march.dx;
  s.picard_tol = c.march.picard_tol;
  s.picard_max = c.march.picard_max;
  s.form = c.solver == SolverKind::vm_phi ? VmForm::phi_form : VmForm::w_form;
  return s;
}

EpsRunConfig eps_config(const RunConfig& c) {
  EpsRunConfig e;
  e.eps_ladder = c.eps_ladder;
  e.dx = c.march.dx;
  e.picard_tol = c.march.picard_tol;
  e.picard_max = c.march.picard_max;
  e.y_max = c.domain.y_max;
  e.y_count = c.grid.y_count;
  e.y_grading_exponent = c.grid.y_grading_exponent;
  e.psi_count = c.grid.count;
  e.psi_grading_exponent = c.grid.grading_exponent;
  return e;
}

InitialProfile make_profile(const RunConfig& c) {
  switch (c.initial_data.family) {
    case Family::hartmann: return InitialProfile::hartmann();
    case Family::perturbed_quartic: return InitialProfile::perturbed(c.initial_data.amplitude, 4);
    case Family::perturbed_quadratic: return InitialProfile::perturbed(c.initial_data.amplitude, 2);
    case Family::custom_samples: {
      std::vector<double> ys;
      std::vector<double> us = read_samples(c.initial_data.custom_path, &ys);
      try {
        return InitialProfile::sampled(Grid1D::from_nodes(std::move(ys)), std::move(us));
      } catch (const Error& e) {
        throw Error(ErrorKind::config_parse, std::string("custom samples rejected: ") + e.what());
      }
    }
  }
  throw Error(ErrorKind::config_parse, "unknown initial data family");
}

}  // namespace phlab::cli

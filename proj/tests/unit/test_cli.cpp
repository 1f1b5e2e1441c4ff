#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "helpers.hpp"
#include "phlab/cli/commands.hpp"
#include "phlab/cli/config.hpp"
#include "phlab/cli/output.hpp"
#include "phlab/equilibrium.hpp"

using namespace phlab;
using namespace phlab::cli;
using test::error_kind;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("phlab_unit_cli_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string write_config(const fs::path& dir, const std::string& text) {
  const fs::path p = dir / "run.cfg";
  std::ofstream(p) << text;
  return p.string();
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json load_json(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

int run(const std::string& cmd, const fs::path& dir, const std::string& cfg_text, std::string* err_out = nullptr) {
  CommandOptions o;
  if (!cfg_text.empty()) o.config_path = write_config(dir, cfg_text);
  o.out_dir = dir.string();
  std::ostringstream log, err;
  const int code = run_command(cmd, o, log, err);
  if (err_out) *err_out = err.str();
  return code;
}

bool cert_pass(const nlohmann::json& s, const std::string& name) {
  for (const auto& c : s["certificates"])
    if (c["name"] == name) return c["pass"].get<bool>();
  FAIL("missing certificate " << name);
  return false;
}

const std::string small_grid = "grid.count = 801\ngrid.y_count = 801\ndiagnostics.y_count = 801\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("config parsing") {
  const auto c = parse_config("# comment\nsolver = vm_phi\nmarch.dx = 0.02  # trailing\neps_ladder = 0.2, 0.1\nseed = 7\n");
  CHECK(c.solver == SolverKind::vm_phi);
  CHECK(c.march.dx == 0.02);
  CHECK(c.eps_ladder == std::vector<double>{0.2, 0.1});
  CHECK(c.seed == 7);
  CHECK(c.march.x_end == 5.0);

  try {
    parse_config("march.dx = 0.01\nnot a setting\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::config_parse);
    CHECK(e.row() == std::optional<std::size_t>(2));
  }
  CHECK(error_kind([] { parse_config("march.bogus = 1\n"); }) == ErrorKind::config_parse);
  CHECK(error_kind([] { parse_config("seed = 1\nseed = 2\n"); }) == ErrorKind::config_parse);
  CHECK(error_kind([] { parse_config("march.dx = abc\n"); }) == ErrorKind::config_parse);
  CHECK(error_kind([] { parse_config(""); }) == ErrorKind::config_parse);
  CHECK(error_kind([] { parse_config("# only comments\n\n"); }) == ErrorKind::config_parse);
  CHECK(error_kind([] { validate(parse_config("eps_ladder = 0.01, 0.1\n")); }) == ErrorKind::config_parse);
  CHECK(error_kind([] {
          validate(parse_config("initial_data.family = perturbed_quartic\ninitial_data.amplitude = -1\n"));
        }) == ErrorKind::config_parse);
}

TEST_CASE("config echo round trips") {
  RunConfig c;
  c.march.dx = 0.1 + 0.2;
  c.eps_ladder = {0.3, 1e-3};
  std::string text;
  for (const auto& l : config_lines(c)) text += l + "\n";
  const auto back = parse_config(text);
  CHECK(back.march.dx == c.march.dx);
  CHECK(back.eps_ladder == c.eps_ladder);
  CHECK(config_lines(back) == config_lines(c));
}

TEST_CASE("flag overrides") {
  CommandOptions o;
  o.seed = 99;
  o.format = "json";
  o.out_dir = "somewhere";
  const auto c = effective_config(o);
  CHECK(c.seed == 99);
  CHECK(c.output.formats == "json");
  CHECK(c.output.directory == "somewhere");
  o.format = "xml";
  CHECK(error_kind([&] { effective_config(o); }) == ErrorKind::config_parse);
}

TEST_CASE("number formatting") {
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(0.5) == "0.5");
  CHECK(std::stod(format_real(0.1 + 0.2)) == 0.1 + 0.2);
}

TEST_CASE("steady subcommand") {
  const auto dir = scratch("steady");
  REQUIRE(run("steady", dir, "") == exit_pass);
  const auto t = read_csv((dir / "steady.csv").string());
  CHECK(t.columns == std::vector<std::string>{"y", "u_bar", "b_bar", "psi_bar"});
  CHECK(t.rows.front() == std::vector<double>{0, 0, 0, 0});
  bool found = false;
  for (const auto& r : t.rows) {
    if (r[0] == std::log(2.0)) {
      CHECK(r[1] == doctest::Approx(0.5).epsilon(1e-15));
      found = true;
    }
    CHECK(std::abs(r[3] - (r[0] + std::exp(-r[0]) - 1.0)) <= 1e-12);
  }
  CHECK(found);
  const auto text = slurp(dir / "steady.csv");
  CHECK(text.rfind("# schema_version = 1\n", 0) == 0);
  CHECK(text.find("# march.dx = 0.01") != std::string::npos);
  const auto s = load_json(dir / "steady.json");
  CHECK(s.contains("config"));
  CHECK(s.contains("stations_count"));
}

TEST_CASE("march on the equilibrium") {
  const auto dir = scratch("march_h");
  REQUIRE(run("march", dir, "march.x_end = 2\n") == exit_pass);
  const auto s = load_json(dir / "summary.json");
  CHECK(s["max_u_deviation"].get<double>() <= 1e-6);
  CHECK(cert_pass(s, "equilibrium_persistence"));
  CHECK(s["stations_count"] == 201);
  CHECK(s["config"]["march"]["x_end"] == 2.0);
  CHECK(fs::exists(dir / "stations.csv"));
}

TEST_CASE("march on the quartic family") {
  const auto dir = scratch("march_q");
  REQUIRE(run("march", dir, "initial_data.family = perturbed_quartic\ninitial_data.amplitude = 0.05\n") == exit_pass);
  const auto s = load_json(dir / "summary.json");
  CHECK(cert_pass(s, "phi_l2_sq"));
  CHECK(cert_pass(s, "phi_over_sqrt_u_sq"));
  CHECK(cert_pass(s, "phi_l2_sq_rate"));
  for (const auto& f : s["fits"]) {
    CHECK(f.contains("rate"));
    CHECK(f.contains("amplitude"));
    CHECK(f.contains("r2"));
    if (f["series"] == "phi_l2_sq") CHECK(f["rate"].get<double>() >= 0.9);
  }

  CommandOptions o;
  o.input = (dir / "stations.csv").string();
  o.out_dir = dir.string();
  std::ostringstream log, err;
  REQUIRE(run_command("decay-fit", o, log, err) == exit_pass);
  const auto df = load_json(dir / "decay_fit.json");
  CHECK(df["fits"].size() >= 5);
}

TEST_CASE("malformed config exits 1") {
  const auto dir = scratch("bad");
  std::string err;
  CHECK(run("march", dir, "march.dx 0.01\n", &err) == exit_error);
  CHECK(err.find("row 1") != std::string::npos);
  CHECK(run("check", dir, "\n", &err) == exit_error);
  CHECK(run("march", dir, "march.x_end = 0.5\n") == exit_error);
  CHECK(run("bogus", dir, "") == exit_error);
  CommandOptions o;
  std::ostringstream log, e2;
  CHECK(run_command("decay-fit", o, log, e2) == exit_error);
}

TEST_CASE("check subcommand") {
  const auto dir = scratch("check");
  REQUIRE(run("check", dir, "") == exit_pass);
  auto s = load_json(dir / "check.json");
  CHECK(s["compatibility"]["residual_order1"] == 0.0);
  CHECK(s["hardy"]["passed"] == 300);
  CHECK(s["hardy"]["seed"] == 42);

  const double a = 0.05;
  CHECK(run("check", dir, "initial_data.family = perturbed_quadratic\ninitial_data.amplitude = 0.05\n") == exit_failure);
  s = load_json(dir / "check.json");
  CHECK(std::abs(s["compatibility"]["residual_order1"].get<double>() + 2 * a) <= 1e-6);
  CHECK_FALSE(cert_pass(s, "compatibility_orders_0_2"));
}

TEST_CASE("ladder subcommand") {
  const auto dir = scratch("ladder");
  REQUIRE(run("ladder", dir, small_grid + "march.x_end = 1\n") == exit_pass);
  auto s = load_json(dir / "ladder.json");
  const auto d = s["oracle_differences"].get<std::vector<double>>();
  REQUIRE(d.size() == 3);
  CHECK(d[1] < d[0]);
  CHECK(d[2] < d[1]);
  CHECK(s["observed_order"].get<double>() >= 0.8);
  CHECK(fs::exists(dir / "ladder_rung_2.csv"));

  REQUIRE(run("ladder", dir, small_grid + "march.x_end = 1\neps_ladder = 0.05\n") == exit_pass);
  s = load_json(dir / "ladder.json");
  CHECK_FALSE(s.contains("observed_order"));

  CHECK(run("ladder", dir, small_grid + "march.x_end = 1\neps_ladder = 0.1, 0.09, 0.01\n") == exit_failure);
  s = load_json(dir / "ladder.json");
  CHECK(s["monotone"] == false);
}

TEST_CASE("eps march subcommand") {
  const auto dir = scratch("eps");
  REQUIRE(run("march", dir, small_grid + "solver = eps_physical\nmarch.x_end = 1\n") == exit_pass);
  const auto s = load_json(dir / "summary.json");
  CHECK(cert_pass(s, "uniform_bounds"));
}

TEST_CASE("repeated runs are byte identical") {
  const auto dir = scratch("det");
  const std::string cfg = small_grid + "initial_data.family = perturbed_quartic\nmarch.x_end = 1\n";
  REQUIRE(run("march", dir, cfg) == exit_pass);
  const auto a = slurp(dir / "stations.csv"), aj = slurp(dir / "summary.json");
  REQUIRE(run("march", dir, cfg) == exit_pass);
  CHECK(slurp(dir / "stations.csv") == a);
  CHECK(slurp(dir / "summary.json") == aj);
  REQUIRE(run("check", dir, cfg) == exit_pass);
  const auto c = slurp(dir / "check.json");
  REQUIRE(run("check", dir, cfg) == exit_pass);
  CHECK(slurp(dir / "check.json") == c);
}

}

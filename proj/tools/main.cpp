#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "phlab/cli/commands.hpp"

namespace {

void add_common(CLI::App* sub, phlab::cli::CommandOptions& opts) {
  sub->add_option("--config", opts.config_path, "config file (key = value lines)");
  sub->add_option("--out", opts.out_dir, "output directory");
  sub->add_option("--seed", opts.seed, "seed for randomized suites");
  sub->add_option("--format", opts.format, "csv, json or both")->check(CLI::IsMember({"csv", "json", "both"}));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"phlab: marching solvers and diagnostics for the Prandtl-Hartmann boundary layer"};
  app.require_subcommand(1);
  phlab::cli::CommandOptions opts;

  add_common(app.add_subcommand("steady", "tabulate the Hartmann layer"), opts);
  add_common(app.add_subcommand("march", "march one configured run and record diagnostics"), opts);
  add_common(app.add_subcommand("ladder", "run the eps ladder against the von-Mises oracle"), opts);
  add_common(app.add_subcommand("check", "compatibility conditions and the Hardy suite"), opts);
  auto* fit = app.add_subcommand("decay-fit", "fit exponential decay to a stations table");
  add_common(fit, opts);
  fit->add_option("--input", opts.input, "stations CSV written by march")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? phlab::cli::exit_pass : phlab::cli::exit_error;
  }
  return phlab::cli::run_command(app.get_subcommands().front()->get_name(), opts, std::cout, std::cerr);
}

#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "phlab/cli/config.hpp"

namespace phlab::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_error = 1;
inline constexpr int exit_failure = 2;

struct CommandOptions {
  std::optional<std::string> config_path;
  std::optional<std::string> out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> format;  // csv | json | both
  std::optional<std::string> input;   // decay-fit source table
};

/// Loads the config (defaults when no path is given), applies the flag
/// overrides and validates.
RunConfig effective_config(const CommandOptions& opts);

int cmd_steady(const CommandOptions& opts, std::ostream& log);
int cmd_march(const CommandOptions& opts, std::ostream& log);
int cmd_ladder(const CommandOptions& opts, std::ostream& log);
int cmd_check(const CommandOptions& opts, std::ostream& log);
int cmd_decay_fit(const CommandOptions& opts, std::ostream& log);

/// Dispatches by subcommand name; library errors become exit code 1 with a
/// one-line diagnostic on `err`.
int run_command(const std::string& name, const CommandOptions& opts, std::ostream& log, std::ostream& err);

}  // namespace phlab::cli

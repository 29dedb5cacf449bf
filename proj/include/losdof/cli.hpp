#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "losdof/config.hpp"

namespace losdof::cli {

enum ExitCode : int {
  exit_ok = 0,
  exit_invalid_config = 1,
  exit_check_failed = 2,
  exit_io_failure = 3,
};

/// Runs one subcommand for an already validated config (config.experiment
/// selects it) and writes its files under config.out.
int run_experiment(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Full driver: argument parsing, config loading, overrides, dispatch and
/// mapping of errors to exit codes. `args[0]` is the program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, const char* const* argv);

}  // namespace losdof::cli

#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace limitwalk {

/// Exit codes of the limitwalk command.
enum ExitCode : int {
  kExitOk = 0,
  kExitValidation = 1,
  kExitNumerical = 2,
};

/// Runs `limitwalk <summary|roots|init|cdf|pmf|gf|verify> --config PATH [flags]`.
/// `args` excludes the program name. Tables go to `out` as TSV, warnings and
/// errors to `err`; `--json PATH` additionally writes the full report.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "%.12g" formatting used for every number the command prints.
std::string format_number(double v);

}  // namespace limitwalk

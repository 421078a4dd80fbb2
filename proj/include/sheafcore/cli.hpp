#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace sheafcore {

/// Exit statuses of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  exit_usage = 1,
  exit_structure = 2,
  exit_commutativity = 3,
  exit_certification = 4,
};

/// Runs one command. `args` excludes the program name. Reports go to `out`,
/// diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sheafcore

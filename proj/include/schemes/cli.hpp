#pragma once

#include <ostream>
#include <string>
#include <vector>

namespace schemes {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  exit_ok = 0,
  /// An inequality or axiom failed; the witness is printed.
  exit_violation = 1,
  /// Unreadable input, bad parameters or a disconnected relation.
  exit_input = 2,
  /// A construction found nothing to certify.
  exit_infeasible = 3
};

/// Run the tool on `args` (without the program name). Human-readable text
/// goes to `out`, diagnostics to `err`; machine formats go to the --out file,
/// or to `out` when no file is given.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace schemes

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace pinear::cli {

/// Exit codes of the command-line tool.
enum ExitCode : int {
  kExitOk = 0,         // all assertions hold
  kExitViolation = 1,  // a mathematical check failed
  kExitUsage = 2,      // usage or input error
};

/// Runs the tool with argv-style arguments (args[0] is the program name).
/// Reports go to `out`, diagnostics to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace pinear::cli

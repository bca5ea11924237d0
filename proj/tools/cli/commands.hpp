#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace zetalab::cli {

// Process exit codes. Every thrown library error maps to one of them.
enum ExitCode : int {
  kPass = 0,
  kCheckFailed = 1,  // ran to completion; some residual exceeded its tolerance
  kUsage = 2,
  kDomain = 3,
  kInput = 4,  // malformed or invalid input data
  kNetwork = 5,
  kConvergence = 6,
  kInternal = 7,
};

// Parses `args` (without the program name), runs one subcommand and writes
// its report to `out` or to --output. Diagnostics go to `err`.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace zetalab::cli

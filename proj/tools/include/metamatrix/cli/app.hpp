#pragma once

#include <iosfwd>

namespace metamatrix::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitNegative = 1,
  kExitUsage = 2,
  kExitResource = 3,
};

/// Entry point of the `metamatrix` tool. Writes results to `out` and
/// diagnostics to `err`; returns the process exit code.
int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err);

} // namespace metamatrix::cli

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace aimforge::cli {

/// Process exit statuses. Stable; scripts depend on them.
enum ExitStatus : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitBackend = 2,
  kExitInput = 3,
};

/// Runs one command line (without the program name). Normal output goes to
/// `out`; every failure prints a single `aimforge: error[<code>]: ...` line
/// to `err`.
int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace aimforge::cli

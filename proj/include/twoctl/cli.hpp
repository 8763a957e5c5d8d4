#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "twoctl/decoupling.hpp"

namespace twoctl::cli {

/// Process exit codes.
enum ExitCode : int {
  kOk = 0,
  kConfigError = 2,
  kInfeasible = 3,
  kSimulationError = 4,
};

/// Reads TWOCTL_TOL ("ZERO" or "ZERO,NONZERO"); defaults 1e-9 / 1e-6.
/// Throws ConfigError on a malformed value.
Tolerances tolerances_from_env();
Tolerances parse_tolerances(const std::string& text);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace twoctl::cli

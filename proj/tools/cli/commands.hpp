#pragma once

#include <ostream>

namespace hwstaff::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitVerificationFailed = 1,
  kExitDomainError = 2,
  kExitNumericalError = 3,
};

/// Entry point of the hwstaff tool: compute, staff, sweep, verify, simulate.
/// Tabular results go to `out` as CSV, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace hwstaff::cli

#pragma once

#include <iosfwd>
#include <string>

#include "gelsolve/run_config.hpp"

namespace gelsolve::cli {

enum ExitCode : int { kSuccess = 0, kValidationFailure = 1, kConfigError = 2, kSolverError = 3 };

/// Rendered result of one output kind. `csv` may be empty (moments).
struct Emission {
  std::string csv;
  std::string json;
  int status = kSuccess;
};

/// Measure moments and gel time as JSON.
Emission emit_moments(const RunConfig& config);
/// Evaluates one output of a validated configuration. Identical configs give
/// byte-identical emissions regardless of GELSOLVE_THREADS.
Emission emit(const RunConfig& config, Output output);

/// Full command-line entry point; returns the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace gelsolve::cli

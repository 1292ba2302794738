#pragma once

#include "psifrac/config.hpp"

namespace psifrac {

/// Executes a validated config: runs the command and writes its artifacts
/// under config.output.dir. Returns the process exit status: 0 pass/success,
/// 1 verification failure (or non-converged solve). Errors propagate as
/// exceptions; the CLI turns them into a JSON error record and exit 2.
int run(const RunConfig& config);

} // namespace psifrac

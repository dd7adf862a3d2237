#pragma once

// Experiment orchestration: executes the configured experiment, writes CSV
// result files plus a manifest.json run record into the output directory, and
// returns the process exit code (0 success, 2 check.* threshold violated,
// 1 error -- errors are raised as exceptions and mapped by the CLI).

#include "sch/config.hpp"

namespace sch {

int run(const RunConfig& cfg);

}  // namespace sch

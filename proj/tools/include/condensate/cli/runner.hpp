#pragma once

#include "condensate/cli/config.hpp"
#include "condensate/cli/report.hpp"

namespace condensate::cli {

// Executes the configured task and evaluates its checks. runtime_s is left
// empty; the caller decides whether to time the run.
Report run(const RunConfig& cfg);

}  // namespace condensate::cli

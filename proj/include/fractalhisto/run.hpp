#pragma once

#include <string>

#include "fractalhisto/config.hpp"

namespace fractalhisto {

struct RunResult {
    int status = 0;       // 0 ok, 2 solver non-convergence (trace in report)
    std::string report;   // the report-json artifact content
};

/// Dispatches the config's mode, writes every requested artifact, and
/// returns the machine-readable report. Solver non-convergence produces a
/// status-2 result with the trace embedded; validation and I/O problems
/// throw (nothing partial is left behind for validation failures).
RunResult run(const RunConfig& cfg);

}  // namespace fractalhisto

#pragma once

#include "nlab/config.hpp"
#include "nlab/report.hpp"

namespace nlab::cli {

/// Executes the configured verification suites; no file IO.
Report run(const RunConfig& config);

/// run() plus report files in config.output_dir.  Exit codes: 0 all passed,
/// 1 at least one failed check, 2 config error, 3 IO error.
int run_and_write(const RunConfig& config);

}  // namespace nlab::cli

#pragma once

#include "chemflow/config.hpp"

namespace chemflow {

/// Process exit codes of the command-line driver.
enum ExitStatus : int {
    kExitOk = 0,
    kExitConfigError = 2,
    kExitBlowup = 3,
    kExitPropertyViolation = 4,
};

struct RunResult {
    int status = kExitOk;
    std::string message;
};

/// Execute the configured mode and write all artifacts (diagnostics CSV,
/// snapshots, manifest, mode-specific report) into cfg.output_dir.
RunResult run(const RunConfig& cfg);

}  // namespace chemflow

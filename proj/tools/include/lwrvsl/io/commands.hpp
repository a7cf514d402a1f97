#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "lwrvsl/io/config.hpp"
#include "lwrvsl/scenario.hpp"

namespace lwrvsl::io {

enum ExitCode : int {
  kSuccess = 0,
  kUsageError = 1,
  kSolverAbort = 2,
  kVerificationFailed = 3,
};

/// Writes the CSV/JSON/SVG artifacts of one run into `dir` and returns the
/// files written. On failure every file written so far is removed.
std::vector<std::filesystem::path> write_run_artifacts(const std::filesystem::path& dir,
                                                       const SimulationHistory& history, const Scenario& scenario,
                                                       const OutputFormats& formats);

int cmd_simulate(const RunConfig& config, std::ostream& log);
int cmd_sweep(const RunConfig& config, std::ostream& log);
int cmd_riccati(const RunConfig& config, std::ostream& log);
int cmd_verify(std::ostream& log, std::size_t n_coarse = 100);

}  // namespace lwrvsl::io

#pragma once

#include <string>
#include <vector>

#include "lwrvsl/scenario.hpp"

namespace lwrvsl::io {

/// Run summary as pretty-printed JSON with a stable key order (docs/outputs.md).
std::string summary_json(const RunSummary& summary, const SimulationHistory& history, const Scenario& scenario);

/// Sweep summary: one entry per q0 with either its summary or its error.
std::string sweep_summary_json(const std::vector<SweepMember>& members, const Scenario& scenario);

}  // namespace lwrvsl::io

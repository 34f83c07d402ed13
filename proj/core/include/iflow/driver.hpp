#pragma once

#include <filesystem>

#include "iflow/config.hpp"
#include "iflow/diagnostics.hpp"

namespace iflow {

struct RunResult {
  DiagnosticsRecord final_record;
  double wall_time_seconds = 0.0;
  std::filesystem::path output_directory;
};

/// Drive a full simulation: initial condition, time loop, projection policy,
/// snapshots (velocity_NNNNNN.field), per-step JSONL diagnostics, divergence
/// images with min/max sidecars at t = 0 and t = final, the final projected
/// field, and summary.json echoing the full config. With steps == 0 only the
/// t = 0 artifacts are written. Numerical failures surface as
/// NonConvergenceError or DivergedStateError.
RunResult run(const RunConfig& cfg);

}  // namespace iflow

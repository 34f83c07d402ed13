#pragma once

#include <string>
#include <vector>

#include "iflow/dynamics.hpp"
#include "iflow/grid.hpp"

namespace iflow {

// Run configuration, JSON-backed. The default-constructed value is the
// demo preset: 30x30 grid of extent 4*pi, dt = 1.5e-3 for 140 steps,
// obstacle at (7, 7) with radius 0.5 and strength 1, projection applied
// once at the end.

struct GridConfig {
  int n = 30;
  double length = GridSpec::kDefaultLength;
  friend bool operator==(const GridConfig&, const GridConfig&) = default;
};

struct TimeConfig {
  double dt = 1.5e-3;
  long steps = 140;
  TimeScheme scheme = TimeScheme::ForwardEuler;
  friend bool operator==(const TimeConfig&, const TimeConfig&) = default;
};

struct ProjectionConfig {
  ProjectionMode mode = ProjectionMode::AtEnd;
  double tolerance = 1e-10;
  long max_iterations = 0;  // 0 = automatic (20 n^2)
  bool project_initial = false;
  friend bool operator==(const ProjectionConfig&, const ProjectionConfig&) = default;
};

struct PotentialConfig {
  bool enabled = true;
  double a = 7.0;
  double b = 7.0;
  double r = 0.5;
  double tau = 1.0;
  double epsilon = 1e-6;
  friend bool operator==(const PotentialConfig&, const PotentialConfig&) = default;

  /// The obstacle barrier the dynamics sees; disabled means zero strength.
  ObstaclePotential obstacle() const {
    return {{a, b}, r, enabled ? tau : 0.0, epsilon};
  }
};

enum class InitialConditionPreset { Paper, TaylorGreen, File };

struct InitialConditionConfig {
  InitialConditionPreset preset = InitialConditionPreset::Paper;
  std::string path;  // used when preset == File
  friend bool operator==(const InitialConditionConfig&,
                         const InitialConditionConfig&) = default;
};

struct TracerGridConfig {
  bool enabled = false;
  int lattice_m = 20;
  friend bool operator==(const TracerGridConfig&, const TracerGridConfig&) = default;
};

struct CostateRunConfig {
  bool enabled = false;
  friend bool operator==(const CostateRunConfig&, const CostateRunConfig&) = default;
};

struct ImpulseCrossCheckConfig {
  bool enabled = false;
  friend bool operator==(const ImpulseCrossCheckConfig&,
                         const ImpulseCrossCheckConfig&) = default;
};

struct OutputConfig {
  std::string directory = "iflow-out";
  long snapshot_every = 20;
  std::vector<std::string> formats{"field", "pgm"};
  friend bool operator==(const OutputConfig&, const OutputConfig&) = default;
};

struct RunConfig {
  GridConfig grid;
  TimeConfig time;
  ProjectionConfig projection;
  PotentialConfig potential;
  InitialConditionConfig initial_condition;
  TracerGridConfig tracers;
  CostateRunConfig costates;
  ImpulseCrossCheckConfig impulse_crosscheck;
  OutputConfig output;
  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Parse a JSON document into a RunConfig. Missing keys take the preset
/// defaults; unknown keys are rejected. Throws ParseError for malformed
/// JSON and ValidationError (with the key path) for bad values.
RunConfig parse_config(const std::string& json_text);

/// Serialize with every field materialized; parse_config(config_to_json(c))
/// reproduces c exactly.
std::string config_to_json(const RunConfig& cfg);

/// Initial velocity for the configured preset ("file" reads a vector field
/// and requires its grid to match).
VectorField initial_velocity(const RunConfig& cfg);

}  // namespace iflow

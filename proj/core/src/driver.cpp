#include "iflow/driver.hpp"

#include <chrono>
#include <cmath>
#include <fstream>

#include <json.hpp>

#include "iflow/field_io.hpp"
#include "iflow/operators.hpp"

namespace iflow {

namespace {

using nlohmann::json;

std::vector<Vec2> lattice_positions(int m, double length) {
  std::vector<Vec2> out;
  out.reserve(static_cast<size_t>(m) * m);
  const double h = length / m;
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) out.push_back({a * h, b * h});
  }
  return out;
}

char const* snapshot_stem = "velocity_";

std::filesystem::path snapshot_path(const std::filesystem::path& dir, long step) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%s%06ld.field", snapshot_stem, step);
  return dir / buf;
}

json record_to_json(const DiagnosticsRecord& rec) {
  json j{{"step", rec.step},
         {"t", rec.t},
         {"kinetic_energy", rec.kinetic_energy},
         {"divergence_max", rec.divergence_max},
         {"divergence_l2", rec.divergence_l2},
         {"cost_accumulator", rec.cost_accumulator},
         {"max_speed", rec.max_speed}};
  if (rec.area_error_max) j["area_error_max"] = *rec.area_error_max;
  return j;
}

struct CrossCheckMetrics {
  double velocity_rel_l2 = 0.0;
  std::optional<double> costate_consistency_max;
};

double relative_l2(const VectorField& a, const VectorField& b) {
  double num = 0.0;
  double den = 0.0;
  const size_t size = a.u_values().size();
  for (size_t k = 0; k < size; ++k) {
    const double du = a.u_values()[k] - b.u_values()[k];
    const double dv = a.v_values()[k] - b.v_values()[k];
    num += du * du + dv * dv;
    den += b.u_values()[k] * b.u_values()[k] + b.v_values()[k] * b.v_values()[k];
  }
  return den > 0.0 ? std::sqrt(num / den) : std::sqrt(num);
}

}  // namespace

RunResult run(const RunConfig& cfg) {
  const auto start = std::chrono::steady_clock::now();

  const std::filesystem::path dir(cfg.output.directory);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("cannot create output directory " + dir.string() + ": " + ec.message());

  const bool write_fields =
      std::find(cfg.output.formats.begin(), cfg.output.formats.end(), "field") !=
      cfg.output.formats.end();
  const bool write_images =
      std::find(cfg.output.formats.begin(), cfg.output.formats.end(), "pgm") !=
      cfg.output.formats.end();

  StepConfig step_cfg;
  step_cfg.dt = cfg.time.dt;
  step_cfg.projection_mode = cfg.projection.mode;
  step_cfg.time_scheme = cfg.time.scheme;
  step_cfg.poisson.tolerance = cfg.projection.tolerance;
  step_cfg.poisson.max_iterations = cfg.projection.max_iterations;

  const ObstaclePotential obstacle = cfg.potential.obstacle();

  SimState state;
  state.velocity = initial_velocity(cfg);
  if (cfg.projection.project_initial) {
    state.velocity = helmholtz_project(state.velocity, step_cfg.poisson).projected;
  }

  std::vector<Vec2> initial_lattice;
  if (cfg.tracers.enabled) {
    initial_lattice = lattice_positions(cfg.tracers.lattice_m, cfg.grid.length);
    state.tracers = initial_lattice;
    if (cfg.costates.enabled) {
      state.costates = init_costates_from_impulse(state.tracers, state.velocity);
    }
  }

  std::optional<SimState> impulse_state;
  if (cfg.impulse_crosscheck.enabled) {
    impulse_state = make_impulse_state(state.velocity, step_cfg.poisson);
    impulse_state->tracers = state.tracers;
    if (cfg.costates.enabled && impulse_state->impulse) {
      impulse_state->costates =
          init_costates_from_impulse(impulse_state->tracers, *impulse_state->impulse);
    }
  }

  std::ofstream log(dir / "diagnostics.jsonl", std::ios::trunc);
  if (!log) throw Error("cannot open diagnostics log in " + dir.string());

  double cost = 0.0;
  auto record_state = [&](long step) {
    DiagnosticsRecord rec;
    rec.step = step;
    rec.t = state.t;
    rec.kinetic_energy = kinetic_energy(state.velocity);
    const DivergenceNorms norms = divergence_norms(state.velocity);
    rec.divergence_max = norms.max;
    rec.divergence_l2 = norms.l2;
    rec.cost_accumulator = cost;
    rec.max_speed = max_speed(state.velocity);
    if (cfg.tracers.enabled) {
      rec.area_error_max = area_preservation_error(
          initial_lattice, state.tracers, cfg.tracers.lattice_m, cfg.grid.length);
    }
    return rec;
  };

  auto crosscheck_metrics = [&]() -> std::optional<CrossCheckMetrics> {
    if (!impulse_state) return std::nullopt;
    CrossCheckMetrics m;
    m.velocity_rel_l2 = relative_l2(impulse_state->velocity, state.velocity);
    if (cfg.costates.enabled && impulse_state->impulse) {
      double worst = 0.0;
      for (size_t k = 0; k < impulse_state->tracers.size(); ++k) {
        const Vec2 sampled =
            bilinear_interp(*impulse_state->impulse, impulse_state->tracers[k]);
        worst = std::max(worst, norm(impulse_state->costates[k] - sampled));
      }
      m.costate_consistency_max = worst;
    }
    return m;
  };

  auto log_record = [&](const DiagnosticsRecord& rec) {
    json j = record_to_json(rec);
    if (const auto metrics = crosscheck_metrics()) {
      j["impulse_velocity_rel_l2"] = metrics->velocity_rel_l2;
      if (metrics->costate_consistency_max) {
        j["costate_consistency_max"] = *metrics->costate_consistency_max;
      }
    }
    log << j.dump() << "\n";
  };

  DiagnosticsRecord rec = record_state(0);
  log_record(rec);
  if (write_fields) write_field(state.velocity, snapshot_path(dir, 0));
  if (write_images) write_divergence_image(state.velocity, dir / "divergence_t0.pgm");

  for (long step = 1; step <= cfg.time.steps; ++step) {
    // Accumulate the cost integral with the pre-step state (rectangle rule).
    if (cfg.tracers.enabled) {
      cost += cost_step(state.velocity, state.tracers, obstacle, cfg.time.dt);
    } else {
      cost += cfg.time.dt * kinetic_energy(state.velocity);
    }

    state = step_velocity(state, step_cfg, obstacle);
    if (impulse_state) *impulse_state = step_impulse(*impulse_state, step_cfg, obstacle);

    rec = record_state(step);
    log_record(rec);
    if (write_fields && step % cfg.output.snapshot_every == 0) {
      write_field(state.velocity, snapshot_path(dir, step));
    }
  }

  if (cfg.time.steps > 0) {
    if (cfg.projection.mode == ProjectionMode::AtEnd) {
      state.velocity = helmholtz_project(state.velocity, step_cfg.poisson).projected;
      rec = record_state(cfg.time.steps);
    }
    if (write_fields) write_field(state.velocity, dir / "velocity_final.field");
    if (write_images) {
      write_divergence_image(state.velocity, dir / "divergence_final.pgm");
    }
  }

  const auto elapsed = std::chrono::steady_clock::now() - start;
  const double seconds = std::chrono::duration<double>(elapsed).count();

  json summary{{"config", json::parse(config_to_json(cfg))},
               {"final", record_to_json(rec)},
               {"wall_time_seconds", seconds}};
  std::ofstream summary_out(dir / "summary.json", std::ios::trunc);
  summary_out << summary.dump(2) << "\n";
  if (!summary_out) throw Error("cannot write summary.json in " + dir.string());

  return {rec, seconds, dir};
}

}  // namespace iflow

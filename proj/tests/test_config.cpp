#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <numbers>

#include "iflow/config.hpp"
#include "iflow/field_io.hpp"
#include "iflow/operators.hpp"
#include "test_support.hpp"

using namespace iflow;
using namespace iflow::testing;

TEST_CASE("empty document yields the demo preset") {
  const RunConfig cfg = parse_config("{}");
  CHECK(cfg == RunConfig{});
  CHECK(cfg.grid.n == 30);
  CHECK(cfg.grid.length == doctest::Approx(4.0 * std::numbers::pi));
  CHECK(cfg.time.dt == doctest::Approx(1.5e-3));
  CHECK(cfg.time.steps == 140);
  CHECK(cfg.time.scheme == TimeScheme::ForwardEuler);
  CHECK(cfg.projection.mode == ProjectionMode::AtEnd);
  CHECK(cfg.projection.tolerance == doctest::Approx(1e-10));
  CHECK(cfg.projection.max_iterations == 0);
  CHECK(!cfg.projection.project_initial);
  CHECK(cfg.potential.enabled);
  CHECK(cfg.potential.a == 7.0);
  CHECK(cfg.potential.b == 7.0);
  CHECK(cfg.potential.r == 0.5);
  CHECK(cfg.potential.tau == 1.0);
  CHECK(cfg.potential.epsilon == doctest::Approx(1e-6));
  CHECK(cfg.initial_condition.preset == InitialConditionPreset::Paper);
  CHECK(!cfg.tracers.enabled);
  CHECK(cfg.tracers.lattice_m == 20);
  CHECK(!cfg.costates.enabled);
  CHECK(!cfg.impulse_crosscheck.enabled);
  CHECK(cfg.output.snapshot_every == 20);
  CHECK(cfg.output.formats == std::vector<std::string>{"field", "pgm"});
}

TEST_CASE("validation failures carry the key path") {
  auto expect_path = [](const std::string& text, const std::string& path) {
    try {
      parse_config(text);
      FAIL("expected ValidationError for ", text);
    } catch (const ValidationError& e) {
      CHECK(e.key_path() == path);
    }
  };

  expect_path(R"({"time": {"dt": -1}})", "time.dt");
  expect_path(R"({"time": {"steps": -5}})", "time.steps");
  expect_path(R"({"grid": {"n": 7}})", "grid.n");
  expect_path(R"({"grid": {"n": 4}})", "grid.n");
  expect_path(R"({"grid": {"length": -2.0}})", "grid.length");
  expect_path(R"({"projection": {"tolerance": 0}})", "projection.tolerance");
  expect_path(R"({"projection": {"mode": "sometimes"}})", "projection.mode");
  expect_path(R"({"time": {"scheme": "leapfrog"}})", "time.scheme");
  expect_path(R"({"potential": {"r": 0}})", "potential.r");
  expect_path(R"({"potential": {"tau": -1}})", "potential.tau");
  expect_path(R"({"potential": {"epsilon": 0}})", "potential.epsilon");
  expect_path(R"({"tracers": {"lattice_m": 1}})", "tracers.lattice_m");
  expect_path(R"({"output": {"snapshot_every": 0}})", "output.snapshot_every");
  expect_path(R"({"output": {"formats": ["bmp"]}})", "output.formats");
  expect_path(R"({"initial_condition": {"preset": "vortex-sheet"}})",
              "initial_condition.preset");
  expect_path(R"({"costates": {"enabled": true}})", "costates.enabled");
}

TEST_CASE("unknown keys are rejected at every level") {
  CHECK_THROWS_AS(parse_config(R"({"grids": {}})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"nn": 30}})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"time": {"dt": 1e-3, "Dt": 1e-3}})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"output": {"dir": "x"}})"), ValidationError);
}

TEST_CASE("type mismatches are validation errors") {
  CHECK_THROWS_AS(parse_config(R"({"grid": {"n": "thirty"}})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"grid": {"n": 30.5}})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"potential": {"enabled": 1}})"), ValidationError);
  CHECK_THROWS_AS(parse_config(R"({"grid": []})"), ValidationError);
}

TEST_CASE("malformed JSON is a parse error") {
  CHECK_THROWS_AS(parse_config("{"), ParseError);
  CHECK_THROWS_AS(parse_config(""), ParseError);
  CHECK_THROWS_AS(parse_config("[1, 2]"), ParseError);
}

TEST_CASE("disabled potential behaves as zero strength") {
  const RunConfig cfg = parse_config(R"({"potential": {"enabled": false}})");
  CHECK(cfg.potential.obstacle().strength == 0.0);
  CHECK(!cfg.potential.obstacle().enabled());
}

TEST_CASE("config echo round-trips exactly") {
  RunConfig cfg;
  CHECK(parse_config(config_to_json(cfg)) == cfg);

  cfg.grid.n = 60;
  cfg.time.scheme = TimeScheme::RungeKutta4;
  cfg.time.steps = 0;
  cfg.projection.mode = ProjectionMode::PerStep;
  cfg.projection.project_initial = true;
  cfg.potential.enabled = false;
  cfg.potential.tau = 0.25;
  cfg.initial_condition.preset = InitialConditionPreset::TaylorGreen;
  cfg.tracers.enabled = true;
  cfg.tracers.lattice_m = 12;
  cfg.costates.enabled = true;
  cfg.impulse_crosscheck.enabled = true;
  cfg.output.directory = "elsewhere";
  cfg.output.snapshot_every = 7;
  cfg.output.formats = {"field"};
  CHECK(parse_config(config_to_json(cfg)) == cfg);
}

TEST_CASE("file preset demands an existing path") {
  CHECK_THROWS_AS(parse_config(R"({"initial_condition": {"preset": "file"}})"),
                  ValidationError);
  CHECK_THROWS_AS(
      parse_config(R"({"initial_condition": {"preset": "file", "path": "/nope.field"}})"),
      ValidationError);
}

TEST_CASE("file preset loads a matching field") {
  const GridSpec spec(30);
  const VectorField v = shear_vortex(spec);
  const auto path = std::filesystem::temp_directory_path() / "iflow_test_ic.field";
  write_field(v, path);

  const std::string text = std::string(R"({"initial_condition": {"preset": "file", "path": ")") +
                           path.string() + R"("}})";
  const RunConfig cfg = parse_config(text);
  const VectorField loaded = initial_velocity(cfg);
  CHECK(loaded == v);

  SUBCASE("grid mismatch is rejected") {
    RunConfig wrong = cfg;
    wrong.grid.n = 60;
    CHECK_THROWS_AS(initial_velocity(wrong), ValidationError);
  }

  std::filesystem::remove(path);
}

TEST_CASE("initial velocity presets") {
  RunConfig cfg;
  const GridSpec spec(cfg.grid.n, cfg.grid.length);

  SUBCASE("demo preset samples the shear vortex") {
    const VectorField v = initial_velocity(cfg);
    const double dx = spec.dx();
    CHECK(v.u(1, 1) == doctest::Approx(-std::sin(dx) * std::cos(dx)).epsilon(1e-15));
    CHECK(v.v(1, 1) == doctest::Approx(std::sin(dx) * std::cos(dx)).epsilon(1e-15));
  }

  SUBCASE("taylor-green preset is discretely divergence-free") {
    cfg.initial_condition.preset = InitialConditionPreset::TaylorGreen;
    const VectorField v = initial_velocity(cfg);
    CHECK(max_abs(divergence(v)) <= 1e-13);
  }
}

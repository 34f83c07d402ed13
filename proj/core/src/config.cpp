#include "iflow/config.hpp"

#include <cmath>
#include <filesystem>
#include <set>

#include <json.hpp>

#include "iflow/field_io.hpp"

namespace iflow {

namespace {

using nlohmann::json;

[[noreturn]] void bad_value(const std::string& path, const std::string& detail) {
  throw ValidationError(path, detail);
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& known) {
  for (const auto& [key, _] : obj.items()) {
    if (!known.contains(key)) {
      bad_value(path.empty() ? key : path + "." + key, "unknown key");
    }
  }
}

const json* subobject(const json& root, const std::string& key) {
  if (!root.contains(key)) return nullptr;
  const json& sub = root.at(key);
  if (!sub.is_object()) bad_value(key, "expected an object");
  return &sub;
}

template <class T>
void read_number(const json& obj, const std::string& path, const std::string& key,
                 T& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number()) bad_value(path + "." + key, "expected a number");
  out = v.get<T>();
}

void read_integer(const json& obj, const std::string& path, const std::string& key,
                  long& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) bad_value(path + "." + key, "expected an integer");
  out = v.get<long>();
}

void read_integer(const json& obj, const std::string& path, const std::string& key,
                  int& out) {
  long tmp = out;
  read_integer(obj, path, key, tmp);
  out = static_cast<int>(tmp);
}

void read_bool(const json& obj, const std::string& path, const std::string& key,
               bool& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_boolean()) bad_value(path + "." + key, "expected a boolean");
  out = v.get<bool>();
}

void read_string(const json& obj, const std::string& path, const std::string& key,
                 std::string& out) {
  if (!obj.contains(key)) return;
  const json& v = obj.at(key);
  if (!v.is_string()) bad_value(path + "." + key, "expected a string");
  out = v.get<std::string>();
}

void parse_grid(const json& obj, GridConfig& cfg) {
  reject_unknown_keys(obj, "grid", {"n", "length"});
  read_integer(obj, "grid", "n", cfg.n);
  read_number(obj, "grid", "length", cfg.length);
  if (cfg.n < 6) bad_value("grid.n", "must be at least 6");
  if (cfg.n % 2 != 0) bad_value("grid.n", "must be even");
  if (!(cfg.length > 0.0) || !std::isfinite(cfg.length)) {
    bad_value("grid.length", "must be positive and finite");
  }
}

void parse_time(const json& obj, TimeConfig& cfg) {
  reject_unknown_keys(obj, "time", {"dt", "steps", "scheme"});
  read_number(obj, "time", "dt", cfg.dt);
  read_integer(obj, "time", "steps", cfg.steps);
  std::string scheme;
  read_string(obj, "time", "scheme", scheme);
  if (!scheme.empty()) {
    if (scheme == "forward-euler") {
      cfg.scheme = TimeScheme::ForwardEuler;
    } else if (scheme == "rk4") {
      cfg.scheme = TimeScheme::RungeKutta4;
    } else {
      bad_value("time.scheme", "must be \"forward-euler\" or \"rk4\"");
    }
  }
  if (!(cfg.dt > 0.0) || !std::isfinite(cfg.dt)) bad_value("time.dt", "must be positive");
  if (cfg.steps < 0) bad_value("time.steps", "must be >= 0");
}

void parse_projection(const json& obj, ProjectionConfig& cfg) {
  reject_unknown_keys(obj, "projection",
                      {"mode", "tolerance", "max_iterations", "project_initial"});
  std::string mode;
  read_string(obj, "projection", "mode", mode);
  if (!mode.empty()) {
    if (mode == "per-step") {
      cfg.mode = ProjectionMode::PerStep;
    } else if (mode == "at-end") {
      cfg.mode = ProjectionMode::AtEnd;
    } else {
      bad_value("projection.mode", "must be \"per-step\" or \"at-end\"");
    }
  }
  read_number(obj, "projection", "tolerance", cfg.tolerance);
  read_integer(obj, "projection", "max_iterations", cfg.max_iterations);
  read_bool(obj, "projection", "project_initial", cfg.project_initial);
  if (!(cfg.tolerance > 0.0)) bad_value("projection.tolerance", "must be positive");
  if (cfg.max_iterations < 0) {
    bad_value("projection.max_iterations", "must be >= 0 (0 = automatic)");
  }
}

void parse_potential(const json& obj, PotentialConfig& cfg) {
  reject_unknown_keys(obj, "potential", {"enabled", "a", "b", "r", "tau", "epsilon"});
  read_bool(obj, "potential", "enabled", cfg.enabled);
  read_number(obj, "potential", "a", cfg.a);
  read_number(obj, "potential", "b", cfg.b);
  read_number(obj, "potential", "r", cfg.r);
  read_number(obj, "potential", "tau", cfg.tau);
  read_number(obj, "potential", "epsilon", cfg.epsilon);
  if (!(cfg.r > 0.0)) bad_value("potential.r", "must be positive");
  if (cfg.tau < 0.0) bad_value("potential.tau", "must be >= 0");
  if (!(cfg.epsilon > 0.0)) bad_value("potential.epsilon", "must be positive");
}

void parse_initial_condition(const json& obj, InitialConditionConfig& cfg) {
  reject_unknown_keys(obj, "initial_condition", {"preset", "path"});
  std::string preset;
  read_string(obj, "initial_condition", "preset", preset);
  if (!preset.empty()) {
    if (preset == "paper") {
      cfg.preset = InitialConditionPreset::Paper;
    } else if (preset == "taylor-green") {
      cfg.preset = InitialConditionPreset::TaylorGreen;
    } else if (preset == "file") {
      cfg.preset = InitialConditionPreset::File;
    } else {
      bad_value("initial_condition.preset",
                "must be \"paper\", \"taylor-green\", or \"file\"");
    }
  }
  read_string(obj, "initial_condition", "path", cfg.path);
  if (cfg.preset == InitialConditionPreset::File) {
    if (cfg.path.empty()) bad_value("initial_condition.path", "required for preset \"file\"");
    if (!std::filesystem::exists(cfg.path)) {
      bad_value("initial_condition.path", "file does not exist: " + cfg.path);
    }
  }
}

void parse_tracers(const json& obj, TracerGridConfig& cfg) {
  reject_unknown_keys(obj, "tracers", {"enabled", "lattice_m"});
  read_bool(obj, "tracers", "enabled", cfg.enabled);
  read_integer(obj, "tracers", "lattice_m", cfg.lattice_m);
  if (cfg.lattice_m < 2) bad_value("tracers.lattice_m", "must be >= 2");
}

void parse_output(const json& obj, OutputConfig& cfg) {
  reject_unknown_keys(obj, "output", {"directory", "snapshot_every", "formats"});
  read_string(obj, "output", "directory", cfg.directory);
  read_integer(obj, "output", "snapshot_every", cfg.snapshot_every);
  if (obj.contains("formats")) {
    const json& v = obj.at("formats");
    if (!v.is_array()) bad_value("output.formats", "expected an array of strings");
    cfg.formats.clear();
    for (const json& entry : v) {
      if (!entry.is_string()) bad_value("output.formats", "expected an array of strings");
      const std::string fmt = entry.get<std::string>();
      if (fmt != "field" && fmt != "pgm") {
        bad_value("output.formats", "unknown format \"" + fmt + "\"");
      }
      cfg.formats.push_back(fmt);
    }
  }
  if (cfg.directory.empty()) bad_value("output.directory", "must not be empty");
  if (cfg.snapshot_every < 1) bad_value("output.snapshot_every", "must be >= 1");
}

}  // namespace

RunConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
  if (!root.is_object()) throw ParseError("config: top level must be a JSON object");

  RunConfig cfg;
  reject_unknown_keys(root, "",
                      {"grid", "time", "projection", "potential", "initial_condition",
                       "tracers", "costates", "impulse_crosscheck", "output"});
  if (const json* sub = subobject(root, "grid")) parse_grid(*sub, cfg.grid);
  if (const json* sub = subobject(root, "time")) parse_time(*sub, cfg.time);
  if (const json* sub = subobject(root, "projection")) parse_projection(*sub, cfg.projection);
  if (const json* sub = subobject(root, "potential")) parse_potential(*sub, cfg.potential);
  if (const json* sub = subobject(root, "initial_condition")) {
    parse_initial_condition(*sub, cfg.initial_condition);
  }
  if (const json* sub = subobject(root, "tracers")) parse_tracers(*sub, cfg.tracers);
  if (const json* sub = subobject(root, "costates")) {
    reject_unknown_keys(*sub, "costates", {"enabled"});
    read_bool(*sub, "costates", "enabled", cfg.costates.enabled);
  }
  if (const json* sub = subobject(root, "impulse_crosscheck")) {
    reject_unknown_keys(*sub, "impulse_crosscheck", {"enabled"});
    read_bool(*sub, "impulse_crosscheck", "enabled", cfg.impulse_crosscheck.enabled);
  }
  if (const json* sub = subobject(root, "output")) parse_output(*sub, cfg.output);

  if (cfg.costates.enabled && !cfg.tracers.enabled) {
    bad_value("costates.enabled", "requires tracers.enabled");
  }
  return cfg;
}

std::string config_to_json(const RunConfig& cfg) {
  json root;
  root["grid"] = {{"n", cfg.grid.n}, {"length", cfg.grid.length}};
  root["time"] = {
      {"dt", cfg.time.dt},
      {"steps", cfg.time.steps},
      {"scheme", cfg.time.scheme == TimeScheme::ForwardEuler ? "forward-euler" : "rk4"}};
  root["projection"] = {
      {"mode", cfg.projection.mode == ProjectionMode::PerStep ? "per-step" : "at-end"},
      {"tolerance", cfg.projection.tolerance},
      {"max_iterations", cfg.projection.max_iterations},
      {"project_initial", cfg.projection.project_initial}};
  root["potential"] = {{"enabled", cfg.potential.enabled}, {"a", cfg.potential.a},
                       {"b", cfg.potential.b},             {"r", cfg.potential.r},
                       {"tau", cfg.potential.tau},         {"epsilon", cfg.potential.epsilon}};
  json ic;
  switch (cfg.initial_condition.preset) {
    case InitialConditionPreset::Paper:
      ic["preset"] = "paper";
      break;
    case InitialConditionPreset::TaylorGreen:
      ic["preset"] = "taylor-green";
      break;
    case InitialConditionPreset::File:
      ic["preset"] = "file";
      break;
  }
  if (!cfg.initial_condition.path.empty()) ic["path"] = cfg.initial_condition.path;
  root["initial_condition"] = ic;
  root["tracers"] = {{"enabled", cfg.tracers.enabled},
                     {"lattice_m", cfg.tracers.lattice_m}};
  root["costates"] = {{"enabled", cfg.costates.enabled}};
  root["impulse_crosscheck"] = {{"enabled", cfg.impulse_crosscheck.enabled}};
  root["output"] = {{"directory", cfg.output.directory},
                    {"snapshot_every", cfg.output.snapshot_every},
                    {"formats", cfg.output.formats}};
  return root.dump(2);
}

VectorField initial_velocity(const RunConfig& cfg) {
  const GridSpec spec(cfg.grid.n, cfg.grid.length);
  switch (cfg.initial_condition.preset) {
    case InitialConditionPreset::Paper:
      return sample_analytic([](double x, double y) { return -std::sin(y) * std::cos(x); },
                             [](double x, double y) { return std::sin(y) * std::cos(x); },
                             spec);
    case InitialConditionPreset::TaylorGreen:
      return sample_analytic([](double x, double y) { return std::sin(x) * std::cos(y); },
                             [](double x, double y) { return -std::cos(x) * std::sin(y); },
                             spec);
    case InitialConditionPreset::File: {
      VectorField field = read_vector_field(cfg.initial_condition.path);
      if (!(field.spec() == spec)) {
        throw ValidationError("initial_condition.path",
                              "field grid does not match grid.n / grid.length");
      }
      return field;
    }
  }
  throw Error("initial_velocity: unreachable");
}

}  // namespace iflow

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "iflow/config.hpp"
#include "iflow/driver.hpp"
#include "iflow/field_io.hpp"
#include "iflow/identities.hpp"
#include "iflow/poisson.hpp"

namespace {

constexpr int kExitSuccess = 0;
constexpr int kExitNumericalFailure = 1;
constexpr int kExitUsage = 2;

constexpr double kIdentityResidualBound = 1e-10;

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw iflow::Error("cannot open config file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void apply_out_dir_override(iflow::RunConfig& cfg) {
  if (const char* dir = std::getenv("IFLOW_OUT_DIR"); dir != nullptr && *dir != '\0') {
    cfg.output.directory = dir;
  }
}

void print_error_json(const std::string& type, const std::string& message,
                      const nlohmann::json& extra = nlohmann::json::object()) {
  nlohmann::json err{{"type", type}, {"message", message}};
  for (const auto& [k, v] : extra.items()) err[k] = v;
  std::cout << nlohmann::json{{"error", err}}.dump() << "\n";
}

int run_and_report(const iflow::RunConfig& cfg) {
  const iflow::RunResult result = iflow::run(cfg);
  std::cout << "completed " << cfg.time.steps << " steps"
            << "; output: " << result.output_directory.string()
            << "; final |div v|_inf = " << result.final_record.divergence_max
            << "; kinetic energy = " << result.final_record.kinetic_energy << "\n";
  return kExitSuccess;
}

int cmd_run(const std::string& config_path) {
  iflow::RunConfig cfg = iflow::parse_config(read_text_file(config_path));
  apply_out_dir_override(cfg);
  return run_and_report(cfg);
}

int cmd_demo_paper(std::string out_dir) {
  iflow::RunConfig cfg;  // defaults are the demo preset
  cfg.output.directory = std::move(out_dir);
  apply_out_dir_override(cfg);
  return run_and_report(cfg);
}

int cmd_project(const std::string& input, std::string output, const std::string& csv) {
  const iflow::VectorField field = iflow::read_vector_field(input);
  const iflow::ProjectionResult proj = iflow::helmholtz_project(field);
  if (output.empty()) output = input + ".projected";
  iflow::write_field(proj.projected, output);
  if (!csv.empty()) iflow::write_field_csv(proj.projected, csv);
  const iflow::DivergenceNorms norms = iflow::divergence_norms(proj.projected);
  std::cout << "projected " << input << " -> " << output << "; poisson residual "
            << proj.residual << " in " << proj.iterations << " iterations"
            << "; |div X0|_inf = " << norms.max << "\n";
  return kExitSuccess;
}

int cmd_check_identities(long trials) {
  const iflow::IdentityTrialReport report = iflow::run_identity_trials(trials);
  for (int item = 0; item < 3; ++item) {
    std::printf("identity %d: max residual %.3e over %ld trials\n", item + 1,
                report.max_residual[item], report.trials);
  }
  if (!report.all_within(kIdentityResidualBound)) {
    std::printf("FAIL: residual above %.1e\n", kIdentityResidualBound);
    return kExitNumericalFailure;
  }
  std::printf("OK: all residuals within %.1e\n", kIdentityResidualBound);
  return kExitSuccess;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"iflow: 2D incompressible ideal-flow solver with obstacle barrier"};
  app.require_subcommand(1);

  std::string config_path;
  auto* run_cmd = app.add_subcommand("run", "Run a simulation from a JSON config");
  run_cmd->add_option("config", config_path, "JSON configuration file")->required();

  std::string project_input;
  std::string project_output;
  std::string project_csv;
  auto* project_cmd =
      app.add_subcommand("project", "Helmholtz-project a vector field file");
  project_cmd->add_option("field-file", project_input, "Input vector field")->required();
  project_cmd->add_option("--out", project_output, "Output path (default: <input>.projected)");
  project_cmd->add_option("--csv", project_csv, "Also export the projected field as CSV");

  long trials = 1000;
  auto* check_cmd = app.add_subcommand(
      "check-identities", "Verify the pointwise vector-calculus identities");
  check_cmd->add_option("--trials", trials, "Random field/point draws")
      ->check(CLI::PositiveNumber);

  std::string demo_out = "demo-paper-out";
  auto* demo_cmd = app.add_subcommand("demo-paper", "Run the built-in demo preset");
  demo_cmd->add_option("--out", demo_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << std::flush;
    return kExitUsage;
  }

  try {
    if (run_cmd->parsed()) return cmd_run(config_path);
    if (project_cmd->parsed()) return cmd_project(project_input, project_output, project_csv);
    if (check_cmd->parsed()) return cmd_check_identities(trials);
    if (demo_cmd->parsed()) return cmd_demo_paper(demo_out);
  } catch (const iflow::NonConvergenceError& e) {
    print_error_json("NonConvergence", e.what(),
                     {{"residual", e.residual()}, {"iterations", e.iterations()}});
    return kExitNumericalFailure;
  } catch (const iflow::DivergedStateError& e) {
    print_error_json("DivergedState", e.what(), {{"max_speed", e.max_speed()}, {"t", e.t()}});
    return kExitNumericalFailure;
  } catch (const iflow::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const iflow::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const iflow::FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const iflow::Error& e) {
    print_error_json("Error", e.what());
    return kExitNumericalFailure;
  }
  return kExitUsage;
}

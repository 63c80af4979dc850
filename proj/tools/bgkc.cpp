// bgkc: kinetic/fluid coupling runs from a JSON scenario file.
//
//   bgkc <layer|coupled|naive|epsilon-sweep|stability|compare-couplings>
//        --config scenario.json [--out DIR] [--jobs N] [--verbose]
//
// Exit status: 0 success, 2 invalid configuration or arguments, 3 solver failure.

#include <chrono>
#include <filesystem>
#include <functional>
#include <iostream>

#include <CLI11.hpp>
#include <omp.h>

#include "bgkc/config.hpp"
#include "bgkc/errors.hpp"
#include "bgkc/experiments.hpp"
#include "bgkc/output.hpp"

namespace fs = std::filesystem;
using namespace bgkc;

namespace {

constexpr int exit_validation = 2;
constexpr int exit_solver = 3;

struct Run {
  ScenarioConfig config;
  fs::path out;
  int jobs;
  bool verbose;
  RunManifest manifest;

  fs::path file(const std::string& name) {
    manifest.outputs.push_back(name);
    return out / name;
  }

  template <class F>
  auto timed(const std::string& label, F&& work) {
    const auto start = std::chrono::steady_clock::now();
    auto result = work();
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    manifest.timings.emplace_back(label, took.count());
    if (verbose) std::cerr << label << ": " << took.count() << " s\n";
    return result;
  }

  void log(const std::string& msg) const {
    if (verbose) std::cerr << msg << '\n';
  }
};

void write_trajectory(Run& run, const Trajectory& t, const std::string& prefix) {
  write_trace_csv(run.file(prefix + "trace.csv"), t.final_state.trace);
  write_kinetic_csv(run.file(prefix + "kinetic_final.csv"), t.final_state.kinetic);
  write_fluid_csv(run.file(prefix + "fluid_final.csv"), t.final_state.fluid);
}

void cmd_layer(Run& run) {
  const auto& c = run.config;
  LayerSolveOptions o;
  o.tol_fix = c.tol_fix;
  o.max_iter = c.max_iter;
  o.tol_class = c.tol_class;
  const auto layer = run.timed("layer", [&] { return solve_layer(layer_data(c), c.layer_grid, o); });
  run.log(std::string("class ") + to_string(layer.classification) + " after " +
          std::to_string(layer.diagnostics.iterations) + " sweeps");
  write_layer_csv(run.file("layer_profile.csv"), layer);
  write_json(run.file("layer_summary.json"), to_json(layer));
}

void cmd_trajectory(Run& run, CouplingMode mode) {
  const auto& c = run.config;
  const auto t = run.timed("trajectory", [&] { return solve_limit(c, initial_data(c), mode, time_stepping(c).steps); });
  write_trajectory(run, t, "");
}

void cmd_sweep(Run& run) {
  const auto report = run.timed("convergence", [&] { return run_convergence_study(run.config, run.jobs); });
  write_convergence_csv(run.file("convergence.csv"), report);
  write_json(run.file("convergence.json"), to_json(report));
}

void cmd_stability(Run& run) {
  const auto report = run.timed("stability", [&] { return stability_study(run.config); });
  write_contraction_csv(run.file("contraction.csv"), report);
  write_json(run.file("stability.json"), to_json(report));
}

void cmd_compare(Run& run) {
  const auto cmp = run.timed("comparison", [&] { return compare_couplings(run.config); });
  write_trajectory(run, cmp.limit, "limit_");
  write_trajectory(run, cmp.naive, "naive_");
  nlohmann::ordered_json j;
  j["units"] = {{"distance", "length*velocity"}};
  j["distance"] = cmp.distance;
  j["interface_tolerance"] = cmp.tolerance;
  j["threshold"] = 10.0 * cmp.tolerance;
  j["agree"] = cmp.distance <= 10.0 * cmp.tolerance;
  write_json(run.file("comparison.json"), j);
}

nlohmann::ordered_json grid_summary(const ScenarioConfig& c) {
  const auto ts = time_stepping(c);
  return {{"L", c.velocity_half_width}, {"n_xi", c.velocity_cells}, {"x_min", c.x_min},
          {"x_max", c.x_max},           {"n_x", c.space_cells},      {"dt", ts.dt},
          {"steps", ts.steps},          {"layer_y_max", c.layer_grid.y_max},
          {"layer_n_y", c.layer_grid.cells}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"BGK kinetic / Burgers coupling simulator"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string out_dir = "out";
  int jobs = 1;
  bool verbose = false;
  app.add_option("--config", config_path, "JSON scenario file")->required()->check(CLI::ExistingFile);
  app.add_option("--out", out_dir, "output directory")->capture_default_str();
  app.add_option("--jobs", jobs, "worker threads for independent runs")->check(CLI::PositiveNumber);
  app.add_flag("--verbose", verbose, "progress on stderr");
  app.set_version_flag("--version", version());

  const std::vector<std::pair<std::string, std::string>> commands{
      {"layer", "solve one half-space layer problem and dump the profile"},
      {"coupled", "run the coupled kinetic / fluid / layer system"},
      {"naive", "run the equilibrium-inflow coupling"},
      {"epsilon-sweep", "compare full stiff-relaxation runs against the coupled system"},
      {"stability", "L1 contraction of the coupled system for two initial data"},
      {"compare-couplings", "distance between the two couplings at the horizon"}};
  for (const auto& [name, help] : commands) app.add_subcommand(name, help);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : exit_validation;
  }
  const std::string sub = app.get_subcommands().front()->get_name();

  Run run{ScenarioConfig{}, out_dir, jobs, verbose, RunManifest{}};
  run.manifest.subcommand = sub;
  run.manifest.version = version();
  try {
    run.config = parse_config(config_path);
  } catch (const ValidationError& e) {
    std::cerr << e.what() << '\n';
    return exit_validation;
  } catch (const std::exception& e) {
    std::cerr << "invalid configuration: " << e.what() << '\n';
    return exit_validation;
  }
  run.manifest.scenario = run.config.name;
  run.manifest.config_hash = config_hash(run.config);
  run.manifest.grid = grid_summary(run.config);
  omp_set_num_threads(jobs);

  std::error_code ec;
  fs::create_directories(run.out, ec);
  if (ec) {
    std::cerr << "cannot create " << run.out << ": " << ec.message() << '\n';
    return exit_validation;
  }
  write_json(run.out / "config.json", to_json(run.config));
  run.manifest.outputs.push_back("config.json");

  const std::map<std::string, std::function<void(Run&)>> dispatch{
      {"layer", cmd_layer},
      {"coupled", [](Run& r) { cmd_trajectory(r, CouplingMode::limit); }},
      {"naive", [](Run& r) { cmd_trajectory(r, CouplingMode::naive); }},
      {"epsilon-sweep", cmd_sweep},
      {"stability", cmd_stability},
      {"compare-couplings", cmd_compare}};

  int status = 0;
  try {
    dispatch.at(sub)(run);
  } catch (const std::exception& e) {
    std::cerr << sub << " failed: " << e.what() << '\n';
    run.manifest.failed = true;
    run.manifest.message = e.what();
    status = exit_solver;
  }
  write_manifest(run.out / "manifest.json", run.manifest);
  return status;
}

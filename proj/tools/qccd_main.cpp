#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "qccd/bench.hpp"
#include "qccd/collision.hpp"
#include "qccd/scene_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 2;
constexpr int kExitValidationMismatch = 3;

void write_output(const std::string& content, const std::string& path) {
  if (path.empty()) {
    std::cout << content << "\n";
    return;
  }
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot write output file: " + path);
  }
  out << content;
}

bool wants_csv(const std::string& path) {
  return path.size() >= 4 && path.compare(path.size() - 4, 4, ".csv") == 0;
}

struct GlobalOptions {
  int threads = 0;
  bool validate = false;
  std::string output;
  double t_min = 0.002;
};

qccd::CheckConfig make_config(const GlobalOptions& g) {
  qccd::CheckConfig cfg;
  cfg.t_min = g.t_min;
  return cfg;
}

qccd::BenchOptions make_bench_options(const GlobalOptions& g) {
  qccd::BenchOptions opts;
  opts.threads = g.threads;
  opts.validate = g.validate;
  return opts;
}

int run_check(const std::string& scene_path, const std::string& traj_path,
              const GlobalOptions& g) {
  const qccd::Scene scene = qccd::load_scene(scene_path);
  const qccd::QuinticTrajectory traj = qccd::load_trajectory(traj_path);
  const qccd::CheckConfig cfg = make_config(g);

  nlohmann::json result;
  nlohmann::json obstacles = nlohmann::json::array();
  qccd::Feasibility overall = qccd::Feasibility::Feasible;
  bool mismatch = false;

  const auto fold = [&overall](qccd::Feasibility f) {
    if (f == qccd::Feasibility::Infeasible || overall == qccd::Feasibility::Infeasible) {
      overall = qccd::Feasibility::Infeasible;
    } else if (f == qccd::Feasibility::Indeterminable) {
      overall = qccd::Feasibility::Indeterminable;
    }
  };

  size_t index = 0;
  for (const auto& obstacle : scene.static_obstacles) {
    const auto region = obstacle->enlarged(scene.vehicle_radius);
    const qccd::CollisionVerdict verdict = qccd::collision_check(traj, *region, cfg);
    fold(verdict.feasibility);
    nlohmann::json entry = {{"index", index++},
                            {"kind", "static"},
                            {"verdict", qccd::to_string(verdict.feasibility)},
                            {"sections_checked", verdict.sections_checked}};
    if (verdict.witness_time) {
      entry["witness_time"] = *verdict.witness_time;
    }
    if (g.validate && verdict.feasible()) {
      const auto v = qccd::validate_feasible_verdict(traj, *region, 1e-4);
      entry["oracle"] = v == qccd::OracleValidation::Mismatch ? "mismatch" : "confirmed";
      mismatch = mismatch || v == qccd::OracleValidation::Mismatch;
    }
    obstacles.push_back(entry);
  }
  for (const auto& moving : scene.moving_obstacles) {
    const qccd::CollisionVerdict verdict =
        qccd::collision_check_dynamic(traj, moving, scene.vehicle_radius, cfg);
    fold(verdict.feasibility);
    nlohmann::json entry = {{"index", index++},
                            {"kind", "moving"},
                            {"verdict", qccd::to_string(verdict.feasibility)},
                            {"sections_checked", verdict.sections_checked}};
    if (verdict.witness_time) {
      entry["witness_time"] = *verdict.witness_time;
    }
    if (g.validate && verdict.feasible()) {
      const qccd::QuinticTrajectory rel = qccd::relative_trajectory(traj, moving);
      const auto region = moving.shape->enlarged(scene.vehicle_radius);
      const auto v = qccd::validate_feasible_verdict(rel, *region, 1e-4);
      entry["oracle"] = v == qccd::OracleValidation::Mismatch ? "mismatch" : "confirmed";
      mismatch = mismatch || v == qccd::OracleValidation::Mismatch;
    }
    obstacles.push_back(entry);
  }

  result["overall"] = qccd::to_string(overall);
  result["obstacles"] = obstacles;
  result["in_workspace"] =
      qccd::stays_in_box(traj, scene.workspace_min, scene.workspace_max);
  write_output(result.dump(2), g.output);
  return mismatch ? kExitValidationMismatch : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Continuous-time collision detection for quintic trajectories"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions global;
  app.add_option("--threads", global.threads, "Worker threads (0 = hardware)");
  app.add_flag("--validate", global.validate,
               "Re-verify Feasible verdicts with the sampling oracle");
  app.add_option("--output", global.output, "Write the report to a .json or .csv file");
  app.add_option("--tmin", global.t_min, "Minimum section length in seconds")
      ->check(CLI::PositiveNumber);

  auto* check = app.add_subcommand("check", "Check one trajectory against a scene");
  std::string scene_path, traj_path;
  check->add_option("scene", scene_path, "Scene JSON file")->required();
  check->add_option("trajectory", traj_path, "Trajectory JSON file")->required();

  auto* sphere = app.add_subcommand(
      "bench-random-sphere", "Monte Carlo benchmark against random spheres");
  uint64_t trials = 1000000;
  uint64_t seed = 1;
  sphere->add_option("--trials", trials, "Number of trials")->check(CLI::PositiveNumber);
  sphere->add_option("--seed", seed, "RNG seed");

  auto* forest = app.add_subcommand(
      "bench-forest", "Batched stopping-trajectory benchmark against a fixed layout");
  std::string layout_path;
  uint64_t batches = 10000;
  uint64_t forest_seed = 1;
  forest->add_option("--layout", layout_path, "Layout scene JSON file")->required();
  forest->add_option("--batches", batches, "Number of 100-candidate batches")
      ->check(CLI::PositiveNumber);
  forest->add_option("--seed", forest_seed, "RNG seed");

  auto* avoid = app.add_subcommand(
      "bench-avoid", "Headless sample-and-select avoidance planning loop");
  std::string scenario_path;
  double budget_ms = 15.0;
  uint64_t avoid_seed = 1;
  avoid->add_option("--scenario", scenario_path, "Scenario JSON file")->required();
  avoid->add_option("--budget-ms", budget_ms, "Wall-clock sampling budget");
  avoid->add_option("--seed", avoid_seed, "RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (check->parsed()) {
      return run_check(scene_path, traj_path, global);
    }
    if (sphere->parsed()) {
      const qccd::BenchReport report = qccd::bench_random_sphere(
          trials, seed, make_config(global), make_bench_options(global));
      write_output(wants_csv(global.output) ? qccd::to_csv(report)
                                            : qccd::to_json_string(report),
                   global.output);
      return global.validate && report.validation_mismatches > 0
                 ? kExitValidationMismatch
                 : kExitOk;
    }
    if (forest->parsed()) {
      const qccd::Scene layout = qccd::load_scene(layout_path);
      if (!layout.moving_obstacles.empty()) {
        throw std::runtime_error("forest layout must contain static obstacles only");
      }
      std::vector<std::shared_ptr<qccd::ConvexObstacle>> obstacles;
      obstacles.reserve(layout.static_obstacles.size());
      for (const auto& obstacle : layout.static_obstacles) {
        obstacles.push_back(obstacle->enlarged(layout.vehicle_radius));
      }
      const qccd::ForestReport report = qccd::bench_forest_stopping(
          batches, forest_seed, make_config(global), obstacles,
          make_bench_options(global));
      write_output(wants_csv(global.output) ? qccd::to_csv(report)
                                            : qccd::to_json_string(report),
                   global.output);
      return global.validate && report.validation_mismatches > 0
                 ? kExitValidationMismatch
                 : kExitOk;
    }
    if (avoid->parsed()) {
      const qccd::AvoidanceScenario scenario = qccd::load_scenario(scenario_path);
      const qccd::AvoidanceReport report = qccd::bench_avoidance_loop(
          scenario, budget_ms, avoid_seed, make_config(global),
          make_bench_options(global));
      write_output(wants_csv(global.output) ? qccd::to_csv(report)
                                            : qccd::to_json_string(report),
                   global.output);
      return global.validate && report.found && !report.selected_validated
                 ? kExitValidationMismatch
                 : kExitOk;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  return kExitOk;
}

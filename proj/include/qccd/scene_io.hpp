#pragma once

#include <memory>
#include <string>
#include <vector>

#include "qccd/bench.hpp"
#include "qccd/obstacles.hpp"
#include "qccd/trajectory.hpp"

namespace qccd {

//! Obstacle layout plus workspace bounds and vehicle radius, as read from a
//! scene JSON file.
struct Scene {
  Vec3 workspace_min;
  Vec3 workspace_max;
  double vehicle_radius = 0.0;
  std::vector<std::shared_ptr<ConvexObstacle>> static_obstacles;
  std::vector<MovingObstacle> moving_obstacles;
};

//! Parses a scene file. Throws std::runtime_error with a diagnostic message
//! on malformed input.
Scene load_scene(const std::string& path);

//! Parses a trajectory file: either explicit {alpha, beta, gamma} coefficients
//! or an {end, duration} boundary-value problem solved via generate().
QuinticTrajectory load_trajectory(const std::string& path);

//! Parses an avoidance scenario file (scene keys plus initial state,
//! end-sampling box, duration range and optional nominal trajectory).
AvoidanceScenario load_scenario(const std::string& path);

std::string to_json_string(const BenchReport& report, int indent = 2);
std::string to_json_string(const ForestReport& report, int indent = 2);
std::string to_json_string(const AvoidanceReport& report, int indent = 2);

//! One "metric,value" row per scalar metric, for plotting.
std::string to_csv(const BenchReport& report);
std::string to_csv(const ForestReport& report);
std::string to_csv(const AvoidanceReport& report);

}  // namespace qccd

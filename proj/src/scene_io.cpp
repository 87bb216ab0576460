#include "qccd/scene_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qccd {
namespace {

using nlohmann::json;

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open file: " + path);
  }
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

Vec3 parse_vec3(const json& j, const std::string& what) {
  if (!j.is_array() || j.size() != 3) {
    throw std::runtime_error(what + ": expected an array of 3 numbers");
  }
  Vec3 v{j[0].get<double>(), j[1].get<double>(), j[2].get<double>()};
  if (!v.finite()) {
    throw std::runtime_error(what + ": components must be finite");
  }
  return v;
}

Vec3 parse_vec3_field(const json& j, const std::string& key, const std::string& ctx) {
  if (!j.contains(key)) {
    throw std::runtime_error(ctx + ": missing key '" + key + "'");
  }
  return parse_vec3(j.at(key), ctx + "." + key);
}

State parse_state(const json& j, const std::string& ctx) {
  State s;
  s.position = parse_vec3_field(j, "position", ctx);
  s.velocity = parse_vec3_field(j, "velocity", ctx);
  s.acceleration = parse_vec3_field(j, "acceleration", ctx);
  return s;
}

std::array<Vec3, 3> rotation_from_rpy_deg(const Vec3& rpy) {
  constexpr double kDegToRad = 3.14159265358979323846 / 180.0;
  const double r = rpy.x * kDegToRad, p = rpy.y * kDegToRad, y = rpy.z * kDegToRad;
  const double cr = std::cos(r), sr = std::sin(r);
  const double cp = std::cos(p), sp = std::sin(p);
  const double cy = std::cos(y), sy = std::sin(y);
  // Body axes (rows) of R = Rz(yaw) Ry(pitch) Rx(roll).
  return {Vec3{cy * cp, sy * cp, -sp},
          Vec3{cy * sp * sr - sy * cr, sy * sp * sr + cy * cr, cp * sr},
          Vec3{cy * sp * cr + sy * sr, sy * sp * cr - cy * sr, cp * cr}};
}

std::shared_ptr<ConvexObstacle> parse_shape(const json& j, const std::string& ctx) {
  const std::string type = j.at("type").get<std::string>();
  if (type == "sphere") {
    return std::make_shared<SphereObstacle>(parse_vec3_field(j, "center", ctx),
                                            j.at("radius").get<double>());
  }
  if (type == "box") {
    const Vec3 center = parse_vec3_field(j, "center", ctx);
    const Vec3 half = parse_vec3_field(j, "half_extents", ctx);
    if (j.contains("rotation")) {
      const auto& rot = j.at("rotation");
      if (!rot.is_array() || rot.size() != 3) {
        throw std::runtime_error(ctx + ".rotation: expected 3 rows");
      }
      std::array<Vec3, 3> axes;
      for (int i = 0; i < 3; ++i) {
        axes[i] = parse_vec3(rot[i], ctx + ".rotation");
      }
      return std::make_shared<BoxObstacle>(center, half, axes);
    }
    if (j.contains("rpy_deg")) {
      return std::make_shared<BoxObstacle>(
          center, half, rotation_from_rpy_deg(parse_vec3_field(j, "rpy_deg", ctx)));
    }
    return std::make_shared<BoxObstacle>(center, half);
  }
  throw std::runtime_error(ctx + ": unknown obstacle type '" + type + "'");
}

MovingObstacle parse_moving(const json& j, const std::string& ctx) {
  MovingObstacle m;
  m.shape = parse_shape(j.at("shape"), ctx + ".shape");
  const auto& coeffs = j.at("coeffs");
  if (!coeffs.is_array() || coeffs.size() != 3) {
    throw std::runtime_error(ctx + ".coeffs: expected 3 per-axis coefficient arrays");
  }
  for (int axis = 0; axis < 3; ++axis) {
    const auto& row = coeffs[axis];
    if (!row.is_array() || row.size() > 6) {
      throw std::runtime_error(ctx + ".coeffs: per-axis degree must be <= 5");
    }
    for (size_t k = 0; k < row.size(); ++k) {
      m.center_trajectory.coeffs[axis][k] = row[k].get<double>();
    }
  }
  return m;
}

void parse_obstacles(const json& j, const std::string& ctx,
                     std::vector<std::shared_ptr<ConvexObstacle>>& statics,
                     std::vector<MovingObstacle>& movings) {
  if (!j.is_array()) {
    throw std::runtime_error(ctx + ": expected an array");
  }
  for (size_t i = 0; i < j.size(); ++i) {
    const std::string octx = ctx + "[" + std::to_string(i) + "]";
    const auto& entry = j[i];
    const std::string type = entry.at("type").get<std::string>();
    if (type == "moving") {
      movings.push_back(parse_moving(entry, octx));
    } else {
      statics.push_back(parse_shape(entry, octx));
    }
  }
}

void parse_workspace(const json& j, const std::string& ctx, Vec3& min, Vec3& max) {
  min = parse_vec3_field(j, "min", ctx);
  max = parse_vec3_field(j, "max", ctx);
  if (!(min.x < max.x && min.y < max.y && min.z < max.z)) {
    throw std::runtime_error(ctx + ": min must be componentwise below max");
  }
}

json timing_to_json(const TimingStats& t) {
  return {{"mean_us", t.mean_us}, {"p50_us", t.p50_us}, {"p99_us", t.p99_us},
          {"count", t.count}};
}

void append_timing_csv(std::ostringstream& out, const std::string& prefix,
                       const TimingStats& t) {
  out << prefix << "_mean_us," << t.mean_us << "\n";
  out << prefix << "_p50_us," << t.p50_us << "\n";
  out << prefix << "_p99_us," << t.p99_us << "\n";
}

}  // namespace

Scene load_scene(const std::string& path) {
  const json j = load_json_file(path);
  Scene scene;
  try {
    parse_workspace(j.at("workspace"), "workspace", scene.workspace_min,
                    scene.workspace_max);
    scene.vehicle_radius = j.at("vehicle_radius").get<double>();
    if (scene.vehicle_radius < 0.0 || !std::isfinite(scene.vehicle_radius)) {
      throw std::runtime_error("vehicle_radius must be >= 0");
    }
    parse_obstacles(j.at("obstacles"), "obstacles", scene.static_obstacles,
                    scene.moving_obstacles);
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return scene;
}

QuinticTrajectory load_trajectory(const std::string& path) {
  const json j = load_json_file(path);
  try {
    const State initial = parse_state(j.at("initial"), "initial");
    const double duration = j.at("duration").get<double>();
    if (j.contains("alpha") || j.contains("beta") || j.contains("gamma")) {
      return QuinticTrajectory(parse_vec3_field(j, "alpha", "trajectory"),
                               parse_vec3_field(j, "beta", "trajectory"),
                               parse_vec3_field(j, "gamma", "trajectory"), initial,
                               duration);
    }
    if (j.contains("end")) {
      const State end = parse_state(j.at("end"), "end");
      return generate(initial,
                      EndConstraint::full_state(end.position, end.velocity,
                                                end.acceleration),
                      duration);
    }
    throw std::runtime_error("trajectory: need either alpha/beta/gamma or end");
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
}

AvoidanceScenario load_scenario(const std::string& path) {
  const json j = load_json_file(path);
  AvoidanceScenario sc;
  try {
    parse_workspace(j.at("workspace"), "workspace", sc.workspace_min, sc.workspace_max);
    sc.vehicle_radius = j.at("vehicle_radius").get<double>();
    if (sc.vehicle_radius < 0.0 || !std::isfinite(sc.vehicle_radius)) {
      throw std::runtime_error("vehicle_radius must be >= 0");
    }
    parse_obstacles(j.at("obstacles"), "obstacles", sc.static_obstacles,
                    sc.moving_obstacles);
    sc.initial = parse_state(j.at("initial_state"), "initial_state");
    parse_workspace(j.at("end_sampling_box"), "end_sampling_box", sc.end_box_min,
                    sc.end_box_max);
    if (j.contains("duration_range")) {
      const auto& range = j.at("duration_range");
      sc.duration_min = range.at(0).get<double>();
      sc.duration_max = range.at(1).get<double>();
      if (!(sc.duration_min > 0.0 && sc.duration_max >= sc.duration_min)) {
        throw std::runtime_error("duration_range: need 0 < lo <= hi");
      }
    }
    sc.post_horizon = j.value("post_horizon", 5.0);
    if (j.contains("bounds")) {
      const auto& b = j.at("bounds");
      sc.bounds.f_min = b.value("f_min", sc.bounds.f_min);
      sc.bounds.f_max = b.value("f_max", sc.bounds.f_max);
      sc.bounds.omega_max = b.value("omega_max", sc.bounds.omega_max);
      if (b.contains("gravity")) {
        sc.bounds.gravity = parse_vec3_field(b, "gravity", "bounds");
      }
    }
    if (j.contains("nominal")) {
      const auto& nom = j.at("nominal");
      const State end = parse_state(nom.at("end"), "nominal.end");
      sc.nominal = generate(sc.initial,
                            EndConstraint::full_state(end.position, end.velocity,
                                                      end.acceleration),
                            nom.at("duration").get<double>());
    }
  } catch (const json::exception& e) {
    throw std::runtime_error(path + ": " + e.what());
  }
  return sc;
}

std::string to_json_string(const BenchReport& r, int indent) {
  const json j = {{"trials", r.trials},
                  {"seed", r.seed},
                  {"input_infeasible", r.input_infeasible},
                  {"checked", r.checked},
                  {"feasible", r.feasible},
                  {"infeasible", r.infeasible},
                  {"indeterminable", r.indeterminable},
                  {"feasible_fraction", r.feasible_fraction},
                  {"infeasible_fraction", r.infeasible_fraction},
                  {"indeterminable_fraction", r.indeterminable_fraction},
                  {"generation", timing_to_json(r.generation)},
                  {"input_check", timing_to_json(r.input_check)},
                  {"collision", timing_to_json(r.collision)},
                  {"validation_mismatches", r.validation_mismatches},
                  {"validation_grazes", r.validation_grazes}};
  return j.dump(indent);
}

std::string to_json_string(const ForestReport& r, int indent) {
  const json j = {{"batches", r.batches},
                  {"seed", r.seed},
                  {"batch_size", r.batch_size},
                  {"batches_with_feasible", r.batches_with_feasible},
                  {"first_feasible_success_rate", r.first_feasible_success_rate},
                  {"first_feasible_search", timing_to_json(r.first_feasible_search_us)},
                  {"candidates", r.candidates},
                  {"collision_free", r.collision_free},
                  {"collision_free_fraction", r.collision_free_fraction},
                  {"validation_mismatches", r.validation_mismatches},
                  {"validation_grazes", r.validation_grazes}};
  return j.dump(indent);
}

std::string to_json_string(const AvoidanceReport& r, int indent) {
  json j = {{"seed", r.seed},
            {"budget_ms", r.budget_ms},
            {"elapsed_ms", r.elapsed_ms},
            {"candidates", r.candidates},
            {"jerk_rejected", r.jerk_rejected},
            {"input_rejected", r.input_rejected},
            {"workspace_rejected", r.workspace_rejected},
            {"collision_rejected", r.collision_rejected},
            {"fully_feasible", r.fully_feasible},
            {"found", r.found},
            {"selected_validated", r.selected_validated}};
  if (r.nominal_verdict) {
    j["nominal_verdict"] = to_string(*r.nominal_verdict);
  }
  if (r.selected) {
    const auto& t = *r.selected;
    j["selected"] = {
        {"alpha", {t.alpha().x, t.alpha().y, t.alpha().z}},
        {"beta", {t.beta().x, t.beta().y, t.beta().z}},
        {"gamma", {t.gamma().x, t.gamma().y, t.gamma().z}},
        {"initial",
         {{"position",
           {t.initial().position.x, t.initial().position.y, t.initial().position.z}},
          {"velocity",
           {t.initial().velocity.x, t.initial().velocity.y, t.initial().velocity.z}},
          {"acceleration",
           {t.initial().acceleration.x, t.initial().acceleration.y,
            t.initial().acceleration.z}}}},
        {"duration", t.duration()},
        {"average_jerk_squared", r.selected_average_jerk}};
  }
  return j.dump(indent);
}

std::string to_csv(const BenchReport& r) {
  std::ostringstream out;
  out << "metric,value\n";
  out << "trials," << r.trials << "\n";
  out << "seed," << r.seed << "\n";
  out << "input_infeasible," << r.input_infeasible << "\n";
  out << "checked," << r.checked << "\n";
  out << "feasible," << r.feasible << "\n";
  out << "infeasible," << r.infeasible << "\n";
  out << "indeterminable," << r.indeterminable << "\n";
  out << "feasible_fraction," << r.feasible_fraction << "\n";
  out << "infeasible_fraction," << r.infeasible_fraction << "\n";
  out << "indeterminable_fraction," << r.indeterminable_fraction << "\n";
  append_timing_csv(out, "generation", r.generation);
  append_timing_csv(out, "input_check", r.input_check);
  append_timing_csv(out, "collision", r.collision);
  out << "validation_mismatches," << r.validation_mismatches << "\n";
  out << "validation_grazes," << r.validation_grazes << "\n";
  return out.str();
}

std::string to_csv(const ForestReport& r) {
  std::ostringstream out;
  out << "metric,value\n";
  out << "batches," << r.batches << "\n";
  out << "seed," << r.seed << "\n";
  out << "batch_size," << r.batch_size << "\n";
  out << "batches_with_feasible," << r.batches_with_feasible << "\n";
  out << "first_feasible_success_rate," << r.first_feasible_success_rate << "\n";
  append_timing_csv(out, "first_feasible_search", r.first_feasible_search_us);
  out << "candidates," << r.candidates << "\n";
  out << "collision_free," << r.collision_free << "\n";
  out << "collision_free_fraction," << r.collision_free_fraction << "\n";
  out << "validation_mismatches," << r.validation_mismatches << "\n";
  out << "validation_grazes," << r.validation_grazes << "\n";
  return out.str();
}

std::string to_csv(const AvoidanceReport& r) {
  std::ostringstream out;
  out << "metric,value\n";
  out << "seed," << r.seed << "\n";
  out << "budget_ms," << r.budget_ms << "\n";
  out << "elapsed_ms," << r.elapsed_ms << "\n";
  out << "candidates," << r.candidates << "\n";
  out << "jerk_rejected," << r.jerk_rejected << "\n";
  out << "input_rejected," << r.input_rejected << "\n";
  out << "workspace_rejected," << r.workspace_rejected << "\n";
  out << "collision_rejected," << r.collision_rejected << "\n";
  out << "fully_feasible," << r.fully_feasible << "\n";
  out << "found," << (r.found ? 1 : 0) << "\n";
  out << "selected_average_jerk," << r.selected_average_jerk << "\n";
  return out.str();
}

}  // namespace qccd

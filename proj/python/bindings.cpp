#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qccd/bench.hpp"
#include "qccd/collision.hpp"
#include "qccd/geometry.hpp"
#include "qccd/obstacles.hpp"
#include "qccd/rootfind.hpp"
#include "qccd/trajectory.hpp"

namespace py = pybind11;
using namespace qccd;

PYBIND11_MODULE(_qccd, m) {
  m.doc() = "Continuous-time collision detection for quintic trajectories";

  py::class_<Vec3>(m, "Vec3")
      .def(py::init<>())
      .def(py::init<double, double, double>(), py::arg("x"), py::arg("y"), py::arg("z"))
      .def_readwrite("x", &Vec3::x)
      .def_readwrite("y", &Vec3::y)
      .def_readwrite("z", &Vec3::z)
      .def("norm", &Vec3::norm)
      .def("dot", &Vec3::dot)
      .def("__add__", [](const Vec3& a, const Vec3& b) { return a + b; })
      .def("__sub__", [](const Vec3& a, const Vec3& b) { return a - b; })
      .def("__mul__", [](const Vec3& a, double s) { return a * s; })
      .def("__repr__", [](const Vec3& v) {
        return "Vec3(" + std::to_string(v.x) + ", " + std::to_string(v.y) + ", " +
               std::to_string(v.z) + ")";
      });

  py::class_<State>(m, "State")
      .def(py::init<>())
      .def(py::init([](const Vec3& p, const Vec3& v, const Vec3& a) {
             return State{p, v, a};
           }),
           py::arg("position"), py::arg("velocity"), py::arg("acceleration"))
      .def_readwrite("position", &State::position)
      .def_readwrite("velocity", &State::velocity)
      .def_readwrite("acceleration", &State::acceleration);

  py::class_<Plane>(m, "Plane")
      .def(py::init<const Vec3&, const Vec3&>(), py::arg("point"), py::arg("normal"))
      .def_property_readonly("point", &Plane::point)
      .def_property_readonly("normal", &Plane::normal);
  m.def("plane_signed_distance", &plane_signed_distance, py::arg("plane"),
        py::arg("q"));

  py::class_<RealPolynomial>(m, "RealPolynomial")
      .def(py::init([](const std::array<double, 5>& c) {
             RealPolynomial p;
             p.c = c;
             return p;
           }),
           py::arg("coefficients"))
      .def("eval", &RealPolynomial::eval);
  m.def(
      "real_roots_in_interval",
      [](const RealPolynomial& poly, double lo, double hi) {
        return real_roots_in_interval(poly, lo, hi);
      },
      py::arg("poly"), py::arg("lo"), py::arg("hi"));

  py::class_<EndConstraint>(m, "EndConstraint")
      .def_static("full_state", &EndConstraint::full_state, py::arg("position"),
                  py::arg("velocity"), py::arg("acceleration"))
      .def_static("rest_at", &EndConstraint::rest_at, py::arg("position"));

  py::class_<QuinticTrajectory>(m, "QuinticTrajectory")
      .def(py::init<const Vec3&, const Vec3&, const Vec3&, const State&, double>(),
           py::arg("alpha"), py::arg("beta"), py::arg("gamma"), py::arg("initial"),
           py::arg("duration"))
      .def("position", &QuinticTrajectory::position, py::arg("t"))
      .def("velocity", &QuinticTrajectory::velocity, py::arg("t"))
      .def("acceleration", &QuinticTrajectory::acceleration, py::arg("t"))
      .def("jerk", &QuinticTrajectory::jerk, py::arg("t"))
      .def("average_jerk_squared", &QuinticTrajectory::average_jerk_squared)
      .def_property_readonly("alpha", &QuinticTrajectory::alpha)
      .def_property_readonly("beta", &QuinticTrajectory::beta)
      .def_property_readonly("gamma", &QuinticTrajectory::gamma)
      .def_property_readonly("initial", &QuinticTrajectory::initial)
      .def_property_readonly("duration", &QuinticTrajectory::duration);

  m.def("generate", &generate, py::arg("initial"), py::arg("end"), py::arg("duration"));

  py::class_<InputBounds>(m, "InputBounds")
      .def(py::init<>())
      .def_readwrite("f_min", &InputBounds::f_min)
      .def_readwrite("f_max", &InputBounds::f_max)
      .def_readwrite("omega_max", &InputBounds::omega_max)
      .def_readwrite("gravity", &InputBounds::gravity);

  py::enum_<InputFeasibility>(m, "InputFeasibility")
      .value("Feasible", InputFeasibility::Feasible)
      .value("Infeasible", InputFeasibility::Infeasible);
  m.def("check_input_feasibility", &check_input_feasibility, py::arg("trajectory"),
        py::arg("bounds"));
  m.def("stays_in_box", &stays_in_box, py::arg("trajectory"), py::arg("box_min"),
        py::arg("box_max"));

  py::class_<ConvexObstacle, std::shared_ptr<ConvexObstacle>>(m, "ConvexObstacle")
      .def("contains", &ConvexObstacle::contains, py::arg("q"))
      .def("closest_point", &ConvexObstacle::closest_point, py::arg("q"))
      .def("signed_distance", &ConvexObstacle::signed_distance, py::arg("q"))
      .def("separating_plane", &ConvexObstacle::separating_plane, py::arg("q"))
      .def("enlarged", &ConvexObstacle::enlarged, py::arg("r_q"));

  py::class_<SphereObstacle, ConvexObstacle, std::shared_ptr<SphereObstacle>>(
      m, "SphereObstacle")
      .def(py::init<const Vec3&, double>(), py::arg("center"), py::arg("radius"))
      .def_property_readonly("center", &SphereObstacle::center)
      .def_property_readonly("radius", &SphereObstacle::radius);

  py::class_<BoxObstacle, ConvexObstacle, std::shared_ptr<BoxObstacle>>(m,
                                                                        "BoxObstacle")
      .def(py::init<const Vec3&, const Vec3&>(), py::arg("center"),
           py::arg("half_extents"))
      .def(py::init<const Vec3&, const Vec3&, const std::array<Vec3, 3>&>(),
           py::arg("center"), py::arg("half_extents"), py::arg("axes"))
      .def_property_readonly("center", &BoxObstacle::center)
      .def_property_readonly("half_extents", &BoxObstacle::half_extents);

  py::class_<PolyTrajectory3>(m, "PolyTrajectory3")
      .def(py::init<>())
      .def_static("constant", &PolyTrajectory3::constant, py::arg("position"))
      .def_static("ballistic", &PolyTrajectory3::ballistic, py::arg("position"),
                  py::arg("velocity"), py::arg("gravity"))
      .def("eval", &PolyTrajectory3::eval, py::arg("t"))
      .def("shifted", &PolyTrajectory3::shifted, py::arg("t0"))
      .def_readwrite("coeffs", &PolyTrajectory3::coeffs);

  py::class_<MovingObstacle>(m, "MovingObstacle")
      .def(py::init([](std::shared_ptr<ConvexObstacle> shape,
                       const PolyTrajectory3& center) {
             return MovingObstacle{std::move(shape), center};
           }),
           py::arg("shape"), py::arg("center_trajectory"))
      .def_readwrite("shape", &MovingObstacle::shape)
      .def_readwrite("center_trajectory", &MovingObstacle::center_trajectory);

  m.def("relative_trajectory", &relative_trajectory, py::arg("trajectory"),
        py::arg("moving"));

  py::enum_<Feasibility>(m, "Feasibility")
      .value("Feasible", Feasibility::Feasible)
      .value("Infeasible", Feasibility::Infeasible)
      .value("Indeterminable", Feasibility::Indeterminable);

  py::class_<CollisionVerdict>(m, "CollisionVerdict")
      .def_readonly("feasibility", &CollisionVerdict::feasibility)
      .def_readonly("witness_time", &CollisionVerdict::witness_time)
      .def_readonly("sections_checked", &CollisionVerdict::sections_checked)
      .def("feasible", &CollisionVerdict::feasible);

  py::class_<CheckConfig>(m, "CheckConfig")
      .def(py::init<>())
      .def(py::init([](double t_min, int max_depth) {
             return CheckConfig{t_min, max_depth};
           }),
           py::arg("t_min"), py::arg("max_recursion_depth") = 64)
      .def_readwrite("t_min", &CheckConfig::t_min)
      .def_readwrite("max_recursion_depth", &CheckConfig::max_recursion_depth);

  m.def("collision_check", &collision_check, py::arg("trajectory"), py::arg("obstacle"),
        py::arg("config") = CheckConfig{});
  m.def("collision_check_dynamic", &collision_check_dynamic, py::arg("trajectory"),
        py::arg("moving"), py::arg("r_q"), py::arg("config") = CheckConfig{});
  m.def("oracle_collision_check", &oracle_collision_check, py::arg("trajectory"),
        py::arg("obstacle"), py::arg("dt"));

  py::class_<TimingStats>(m, "TimingStats")
      .def_readonly("mean_us", &TimingStats::mean_us)
      .def_readonly("p50_us", &TimingStats::p50_us)
      .def_readonly("p99_us", &TimingStats::p99_us)
      .def_readonly("count", &TimingStats::count);

  py::class_<BenchOptions>(m, "BenchOptions")
      .def(py::init<>())
      .def_readwrite("threads", &BenchOptions::threads)
      .def_readwrite("validate", &BenchOptions::validate)
      .def_readwrite("validate_dt", &BenchOptions::validate_dt)
      .def_readwrite("max_candidates", &BenchOptions::max_candidates);

  py::class_<BenchReport>(m, "BenchReport")
      .def_readonly("trials", &BenchReport::trials)
      .def_readonly("seed", &BenchReport::seed)
      .def_readonly("input_infeasible", &BenchReport::input_infeasible)
      .def_readonly("checked", &BenchReport::checked)
      .def_readonly("feasible", &BenchReport::feasible)
      .def_readonly("infeasible", &BenchReport::infeasible)
      .def_readonly("indeterminable", &BenchReport::indeterminable)
      .def_readonly("feasible_fraction", &BenchReport::feasible_fraction)
      .def_readonly("infeasible_fraction", &BenchReport::infeasible_fraction)
      .def_readonly("indeterminable_fraction", &BenchReport::indeterminable_fraction)
      .def_readonly("generation", &BenchReport::generation)
      .def_readonly("input_check", &BenchReport::input_check)
      .def_readonly("collision", &BenchReport::collision)
      .def_readonly("validation_mismatches", &BenchReport::validation_mismatches)
      .def_readonly("validation_grazes", &BenchReport::validation_grazes);

  m.def("bench_random_sphere", &bench_random_sphere, py::arg("trials"), py::arg("seed"),
        py::arg("config") = CheckConfig{}, py::arg("options") = BenchOptions{});

  py::class_<ForestReport>(m, "ForestReport")
      .def_readonly("batches", &ForestReport::batches)
      .def_readonly("seed", &ForestReport::seed)
      .def_readonly("batch_size", &ForestReport::batch_size)
      .def_readonly("batches_with_feasible", &ForestReport::batches_with_feasible)
      .def_readonly("first_feasible_success_rate",
                    &ForestReport::first_feasible_success_rate)
      .def_readonly("first_feasible_search_us", &ForestReport::first_feasible_search_us)
      .def_readonly("candidates", &ForestReport::candidates)
      .def_readonly("collision_free", &ForestReport::collision_free)
      .def_readonly("collision_free_fraction", &ForestReport::collision_free_fraction);

  m.def("bench_forest_stopping", &bench_forest_stopping, py::arg("batches"),
        py::arg("seed"), py::arg("config"), py::arg("layout"),
        py::arg("options") = BenchOptions{});

  py::class_<AvoidanceScenario>(m, "AvoidanceScenario")
      .def(py::init<>())
      .def_readwrite("initial", &AvoidanceScenario::initial)
      .def_readwrite("end_box_min", &AvoidanceScenario::end_box_min)
      .def_readwrite("end_box_max", &AvoidanceScenario::end_box_max)
      .def_readwrite("duration_min", &AvoidanceScenario::duration_min)
      .def_readwrite("duration_max", &AvoidanceScenario::duration_max)
      .def_readwrite("workspace_min", &AvoidanceScenario::workspace_min)
      .def_readwrite("workspace_max", &AvoidanceScenario::workspace_max)
      .def_readwrite("vehicle_radius", &AvoidanceScenario::vehicle_radius)
      .def_readwrite("bounds", &AvoidanceScenario::bounds)
      .def_readwrite("post_horizon", &AvoidanceScenario::post_horizon)
      .def_readwrite("static_obstacles", &AvoidanceScenario::static_obstacles)
      .def_readwrite("moving_obstacles", &AvoidanceScenario::moving_obstacles)
      .def_readwrite("nominal", &AvoidanceScenario::nominal);

  py::class_<AvoidanceReport>(m, "AvoidanceReport")
      .def_readonly("seed", &AvoidanceReport::seed)
      .def_readonly("budget_ms", &AvoidanceReport::budget_ms)
      .def_readonly("elapsed_ms", &AvoidanceReport::elapsed_ms)
      .def_readonly("candidates", &AvoidanceReport::candidates)
      .def_readonly("jerk_rejected", &AvoidanceReport::jerk_rejected)
      .def_readonly("input_rejected", &AvoidanceReport::input_rejected)
      .def_readonly("workspace_rejected", &AvoidanceReport::workspace_rejected)
      .def_readonly("collision_rejected", &AvoidanceReport::collision_rejected)
      .def_readonly("fully_feasible", &AvoidanceReport::fully_feasible)
      .def_readonly("found", &AvoidanceReport::found)
      .def_readonly("selected", &AvoidanceReport::selected)
      .def_readonly("selected_average_jerk", &AvoidanceReport::selected_average_jerk)
      .def_readonly("nominal_verdict", &AvoidanceReport::nominal_verdict)
      .def_readonly("selected_validated", &AvoidanceReport::selected_validated);

  m.def("bench_avoidance_loop", &bench_avoidance_loop, py::arg("scenario"),
        py::arg("budget_ms"), py::arg("seed"), py::arg("config") = CheckConfig{},
        py::arg("options") = BenchOptions{});

  py::enum_<OracleValidation>(m, "OracleValidation")
      .value("Confirmed", OracleValidation::Confirmed)
      .value("Graze", OracleValidation::Graze)
      .value("Mismatch", OracleValidation::Mismatch);
  m.def("validate_feasible_verdict", &validate_feasible_verdict, py::arg("trajectory"),
        py::arg("obstacle"), py::arg("dt"));
}

#include <doctest.h>

#include <cmath>

#include "qccd/obstacles.hpp"
#include "qccd/rng.hpp"
#include "support/oracles.hpp"

using namespace qccd;
using qccd::testing::random_rotation;
using qccd::testing::random_unit_vector;

namespace {

//! Random point inside the obstacle, for soundness sampling.
Vec3 random_inner_point(SplitMix64& rng, const ConvexObstacle& obstacle) {
  if (const auto* sphere = dynamic_cast<const SphereObstacle*>(&obstacle)) {
    const double r = sphere->radius() * std::cbrt(rng.next_double());
    return sphere->center() + random_unit_vector(rng) * r;
  }
  const auto& box = dynamic_cast<const BoxObstacle&>(obstacle);
  Vec3 p = box.center();
  for (int i = 0; i < 3; ++i) {
    p += box.axes()[i] * (box.half_extents()[i] * rng.uniform(-1.0, 1.0));
  }
  return p;
}

}  // namespace

TEST_CASE("sphere membership is closed") {
  const SphereObstacle sphere({0, 0, 0}, 1.0);
  CHECK(sphere.contains({0, 0, 0}));
  CHECK(sphere.contains({0, 0, 1}));  // boundary counts as inside
  CHECK_FALSE(sphere.contains({0, 0, 1.0001}));
}

TEST_CASE("axis-aligned box membership") {
  const BoxObstacle box({0, 0, 0}, {1, 2, 3});
  CHECK(box.contains({1, 2, 3}));
  CHECK_FALSE(box.contains({1.01, 0, 0}));
}

TEST_CASE("sphere separating plane is the radial projection") {
  const SphereObstacle sphere({0, 0, 0}, 1.0);
  const Plane plane = sphere.separating_plane({3, 0, 0});
  CHECK(plane.point().x == doctest::Approx(1.0));
  CHECK(plane.point().y == doctest::Approx(0.0));
  CHECK(plane.normal().x == doctest::Approx(1.0));
}

TEST_CASE("box face projection") {
  const BoxObstacle box({0, 0, 0}, {1, 1, 1});
  const Plane plane = box.separating_plane({0.5, 3, 0.5});
  CHECK(plane.point().x == doctest::Approx(0.5));
  CHECK(plane.point().y == doctest::Approx(1.0));
  CHECK(plane.point().z == doctest::Approx(0.5));
  CHECK(plane.normal().y == doctest::Approx(1.0));
}

TEST_CASE("box corner projection keeps every vertex on the obstacle side") {
  const BoxObstacle box({0, 0, 0}, {1, 1, 1});
  const Plane plane = box.separating_plane({2, 2, 2});
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  CHECK(plane.point().x == doctest::Approx(1.0));
  CHECK(plane.normal().x == doctest::Approx(inv_sqrt3));
  CHECK(plane.normal().y == doctest::Approx(inv_sqrt3));
  CHECK(plane.normal().z == doctest::Approx(inv_sqrt3));
  for (const double sx : {-1.0, 1.0}) {
    for (const double sy : {-1.0, 1.0}) {
      for (const double sz : {-1.0, 1.0}) {
        CHECK(plane_signed_distance(plane, {sx, sy, sz}) <= 1e-12);
      }
    }
  }
}

TEST_CASE("separating plane error cases") {
  const SphereObstacle sphere({0, 0, 0}, 1.0);
  CHECK_THROWS_AS(sphere.separating_plane({0.5, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(sphere.separating_plane({1.0 + 1e-13, 0, 0}), std::domain_error);
  CHECK_FALSE(sphere.try_separating_plane({1.0 + 1e-13, 0, 0}).has_value());
}

TEST_CASE("enlarge grows spheres and boxes, and rejects negative radii") {
  const SphereObstacle sphere({1, 2, 3}, 0.5);
  const auto grown = sphere.enlarged(0.25);
  const auto& grown_sphere = dynamic_cast<const SphereObstacle&>(*grown);
  CHECK(grown_sphere.radius() == doctest::Approx(0.75));
  CHECK(grown_sphere.center().x == doctest::Approx(1.0));

  const BoxObstacle box({0, 0, 0}, {1, 2, 3});
  const auto grown_box_ptr = box.enlarged(0.1);
  const auto& grown_box = dynamic_cast<const BoxObstacle&>(*grown_box_ptr);
  CHECK(grown_box.half_extents().x == doctest::Approx(1.1));
  CHECK(grown_box.half_extents().y == doctest::Approx(2.1));
  CHECK(grown_box.half_extents().z == doctest::Approx(3.1));

  const auto same_ptr = sphere.enlarged(0.0);
  const auto& same = dynamic_cast<const SphereObstacle&>(*same_ptr);
  CHECK(same.radius() == sphere.radius());

  CHECK_THROWS_AS(sphere.enlarged(-0.1), std::invalid_argument);
}

TEST_CASE("enlarge preserves membership") {
  auto rng = SplitMix64::stream(41, 0);
  for (int i = 0; i < 2000; ++i) {
    const SphereObstacle sphere(
        {rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)},
        rng.uniform(0.1, 1.5));
    const Vec3 q = random_inner_point(rng, sphere);
    const double r = rng.uniform(0.0, 2.0);
    CHECK(sphere.enlarged(r)->contains(q));

    const BoxObstacle box({rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)},
                          {rng.uniform(0.1, 2), rng.uniform(0.1, 2), rng.uniform(0.1, 2)},
                          random_rotation(rng));
    const Vec3 qb = random_inner_point(rng, box);
    CHECK(box.enlarged(r)->contains(qb));
  }
}

TEST_CASE("separating plane soundness over random obstacle/point pairs") {
  auto rng = SplitMix64::stream(42, 0);
  constexpr int kPairs = 100000;
  constexpr int kInnerSamples = 1000;
  int failures = 0;
  for (int i = 0; i < kPairs; ++i) {
    std::shared_ptr<ConvexObstacle> obstacle;
    if (rng.next() % 2 == 0) {
      obstacle = std::make_shared<SphereObstacle>(
          Vec3{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)},
          rng.uniform(0.1, 1.5));
    } else {
      obstacle = std::make_shared<BoxObstacle>(
          Vec3{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)},
          Vec3{rng.uniform(0.1, 2), rng.uniform(0.1, 2), rng.uniform(0.1, 2)},
          random_rotation(rng));
    }
    const Vec3 q{rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-8, 8)};
    if (obstacle->contains(q)) {
      continue;
    }
    const auto plane = obstacle->try_separating_plane(q);
    if (!plane) {
      continue;
    }
    if (plane_signed_distance(*plane, q) <= 0.0) {
      ++failures;
      continue;
    }
    for (int s = 0; s < kInnerSamples; ++s) {
      if (plane_signed_distance(*plane, random_inner_point(rng, *obstacle)) > 1e-9) {
        ++failures;
        break;
      }
    }
  }
  CHECK(failures == 0);
}

TEST_CASE("plane distance to the query equals the sphere clearance") {
  auto rng = SplitMix64::stream(43, 0);
  for (int i = 0; i < 2000; ++i) {
    const SphereObstacle sphere(
        {rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)},
        rng.uniform(0.1, 1.5));
    const Vec3 q{rng.uniform(-8, 8), rng.uniform(-8, 8), rng.uniform(-8, 8)};
    if (sphere.contains(q)) {
      continue;
    }
    const Plane plane = sphere.separating_plane(q);
    const double expected = std::abs((q - sphere.center()).norm() - sphere.radius());
    CHECK(plane_signed_distance(plane, q) ==
          doctest::Approx(expected).epsilon(1e-9));
  }
}

TEST_CASE("convexity spot check: midpoints of member points are members") {
  auto rng = SplitMix64::stream(44, 0);
  const BoxObstacle box({0.5, -1, 2}, {0.8, 1.4, 0.3}, random_rotation(rng));
  const SphereObstacle sphere({-1, 0, 1}, 1.2);
  for (int i = 0; i < 2000; ++i) {
    for (const ConvexObstacle* obstacle :
         {static_cast<const ConvexObstacle*>(&box),
          static_cast<const ConvexObstacle*>(&sphere)}) {
      const Vec3 a = random_inner_point(rng, *obstacle);
      const Vec3 b = random_inner_point(rng, *obstacle);
      CHECK(obstacle->contains((a + b) * 0.5));
    }
  }
}

TEST_CASE("box constructor validates orientation and extents") {
  CHECK_THROWS_AS(BoxObstacle({0, 0, 0}, {1, 1, 0}), std::invalid_argument);
  const std::array<Vec3, 3> skewed{Vec3{1, 0, 0}, Vec3{0.1, 1, 0}, Vec3{0, 0, 1}};
  CHECK_THROWS_AS(BoxObstacle({0, 0, 0}, {1, 1, 1}, skewed), std::invalid_argument);
  const std::array<Vec3, 3> left_handed{Vec3{1, 0, 0}, Vec3{0, 0, 1}, Vec3{0, 1, 0}};
  CHECK_THROWS_AS(BoxObstacle({0, 0, 0}, {1, 1, 1}, left_handed), std::invalid_argument);
}

TEST_CASE("relative trajectory of a static center is the trajectory itself") {
  auto rng = SplitMix64::stream(45, 0);
  const auto traj = qccd::testing::random_benchmark_trajectory(rng);
  const MovingObstacle still{std::make_shared<SphereObstacle>(Vec3::zero(), 0.3),
                             PolyTrajectory3{}};
  const auto rel = relative_trajectory(traj, still);
  CHECK(rel.alpha().x == traj.alpha().x);
  CHECK(rel.beta().y == traj.beta().y);
  CHECK(rel.gamma().z == traj.gamma().z);
  CHECK(rel.initial().position.x == traj.initial().position.x);
}

TEST_CASE("relative trajectory of an identical mover is identically zero") {
  auto rng = SplitMix64::stream(46, 0);
  const auto traj = qccd::testing::random_benchmark_trajectory(rng);
  PolyTrajectory3 same;
  for (int k = 0; k < 3; ++k) {
    same.coeffs[k][0] = traj.initial().position[k];
    same.coeffs[k][1] = traj.initial().velocity[k];
    same.coeffs[k][2] = 0.5 * traj.initial().acceleration[k];
    same.coeffs[k][3] = traj.gamma()[k] / 6.0;
    same.coeffs[k][4] = traj.beta()[k] / 24.0;
    same.coeffs[k][5] = traj.alpha()[k] / 120.0;
  }
  const MovingObstacle mover{std::make_shared<SphereObstacle>(Vec3::zero(), 0.3), same};
  const auto rel = relative_trajectory(traj, mover);
  for (double t = 0.0; t <= traj.duration(); t += traj.duration() / 16.0) {
    CHECK(rel.position(t).norm() <= 1e-9);
  }
}

TEST_CASE("relative trajectory matches pointwise subtraction for a projectile") {
  auto rng = SplitMix64::stream(47, 0);
  const auto traj = qccd::testing::random_benchmark_trajectory(rng);
  const auto ballistic = PolyTrajectory3::ballistic(
      {rng.uniform(-3, 3), rng.uniform(-3, 3), rng.uniform(0, 3)},
      {rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(0, 6)}, {0, 0, -9.81});
  const MovingObstacle projectile{std::make_shared<SphereObstacle>(Vec3::zero(), 0.4),
                                  ballistic};
  const auto rel = relative_trajectory(traj, projectile);
  for (int i = 0; i <= 100; ++i) {
    const double t = traj.duration() * i / 100.0;
    const Vec3 expected = traj.position(t) - ballistic.eval(t);
    CHECK((rel.position(t) - expected).norm() <= 1e-12 * (1.0 + expected.norm()));
  }
}

TEST_CASE("polynomial time shift re-expands correctly") {
  auto rng = SplitMix64::stream(48, 0);
  PolyTrajectory3 poly;
  for (int k = 0; k < 3; ++k) {
    for (int j = 0; j < 6; ++j) {
      poly.coeffs[k][j] = rng.uniform(-2, 2);
    }
  }
  const double t0 = rng.uniform(-1.5, 1.5);
  const auto shifted = poly.shifted(t0);
  for (double tau = -1.0; tau <= 1.0; tau += 0.125) {
    const Vec3 expected = poly.eval(t0 + tau);
    CHECK((shifted.eval(tau) - expected).norm() <= 1e-9 * (1.0 + expected.norm()));
  }
}

#include <doctest.h>

#include "qccd/geometry.hpp"
#include "qccd/rng.hpp"

using namespace qccd;

TEST_CASE("plane signed distance: axis-aligned cases") {
  const Plane yz{{0, 0, 0}, {1, 0, 0}};
  CHECK(plane_signed_distance(yz, {0, 0, 0}) == doctest::Approx(0.0));
  CHECK(plane_signed_distance(yz, {2, 3, -5}) == doctest::Approx(2.0));

  const Plane xy{{1, 1, 0}, {0, 0, 1}};
  CHECK(plane_signed_distance(xy, {7, -2, -3}) == doctest::Approx(-3.0));
}

TEST_CASE("plane constructor normalizes near-unit normals") {
  const Plane p{{0, 0, 0}, {2, 0, 0}};
  CHECK(p.normal().x == doctest::Approx(1.0));
  CHECK(p.normal().norm() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("plane constructor rejects degenerate normals") {
  CHECK_THROWS_AS(Plane({0, 0, 0}, {1e-10, 0, 0}), std::invalid_argument);
  CHECK_THROWS_AS(Plane({0, 0, 0}, {0, 0, 0}), std::invalid_argument);
}

TEST_CASE("signed distance is linear in the query point") {
  auto rng = SplitMix64::stream(11, 0);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 point{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    Vec3 normal{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (normal.norm() < 1e-3) {
      normal = {1, 0, 0};
    }
    const Plane plane{point, normal};
    const Vec3 q1{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const Vec3 q2{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const double lambda = rng.next_double();
    const double lhs = plane_signed_distance(plane, q1 * lambda + q2 * (1.0 - lambda));
    const double rhs = lambda * plane_signed_distance(plane, q1) +
                       (1.0 - lambda) * plane_signed_distance(plane, q2);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-10));
  }
}

TEST_CASE("signed distance is translation invariant") {
  auto rng = SplitMix64::stream(12, 0);
  for (int i = 0; i < 1000; ++i) {
    const Vec3 point{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    Vec3 normal{rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1)};
    if (normal.norm() < 1e-3) {
      normal = {0, 1, 0};
    }
    const Vec3 q{rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5)};
    const Vec3 shift{rng.uniform(-9, 9), rng.uniform(-9, 9), rng.uniform(-9, 9)};
    const double before = plane_signed_distance(Plane{point, normal}, q);
    const double after = plane_signed_distance(Plane{point + shift, normal}, q + shift);
    CHECK(before == doctest::Approx(after).epsilon(1e-9));
  }
}

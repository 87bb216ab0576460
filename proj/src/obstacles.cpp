#include "qccd/obstacles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace qccd {

namespace {
constexpr double kDegenerateNormal = 1e-12;  // m
}

Plane ConvexObstacle::separating_plane(const Vec3& q) const {
  if (contains(q)) {
    throw std::invalid_argument("separating_plane: query point inside obstacle");
  }
  const auto plane = try_separating_plane(q);
  if (!plane) {
    throw std::domain_error("separating_plane: degenerate normal (point on boundary)");
  }
  return *plane;
}

std::optional<Plane> ConvexObstacle::try_separating_plane(const Vec3& q) const {
  const Vec3 p = closest_point(q);
  const Vec3 diff = q - p;
  const double dist = diff.norm();
  if (dist <= kDegenerateNormal) {
    return std::nullopt;
  }
  return Plane(p, diff / dist);
}

std::shared_ptr<ConvexObstacle> ConvexObstacle::enlarged(double r_q) const {
  if (r_q < 0.0 || !std::isfinite(r_q)) {
    throw std::invalid_argument("enlarged: radius must be >= 0");
  }
  return grow(r_q);
}

SphereObstacle::SphereObstacle(const Vec3& center, double radius)
    : center_(center), radius_(radius) {
  if (!center.finite() || !std::isfinite(radius) || radius <= 0.0) {
    throw std::invalid_argument("SphereObstacle: radius must be positive and finite");
  }
}

Vec3 SphereObstacle::closest_point(const Vec3& q) const {
  const Vec3 diff = q - center_;
  const double dist = diff.norm();
  if (dist <= radius_) {
    return q;
  }
  return center_ + diff * (radius_ / dist);
}

BoxObstacle::BoxObstacle(const Vec3& center, const Vec3& half_extents,
                         const std::array<Vec3, 3>& axes)
    : center_(center), half_extents_(half_extents), axes_(axes) {
  if (!center.finite() || !half_extents.finite()) {
    throw std::invalid_argument("BoxObstacle: non-finite parameters");
  }
  if (half_extents.x <= 0.0 || half_extents.y <= 0.0 || half_extents.z <= 0.0) {
    throw std::invalid_argument("BoxObstacle: half extents must be positive");
  }
  constexpr double kOrthoTol = 1e-9;
  for (int i = 0; i < 3; ++i) {
    if (!axes_[i].finite()) {
      throw std::invalid_argument("BoxObstacle: non-finite axes");
    }
    for (int j = i; j < 3; ++j) {
      const double expected = (i == j) ? 1.0 : 0.0;
      if (std::abs(axes_[i].dot(axes_[j]) - expected) > kOrthoTol) {
        throw std::invalid_argument("BoxObstacle: axes not orthonormal");
      }
    }
  }
  if (std::abs(axes_[0].dot(cross(axes_[1], axes_[2])) - 1.0) > kOrthoTol) {
    throw std::invalid_argument("BoxObstacle: axes not right-handed");
  }
}

BoxObstacle::BoxObstacle(const Vec3& center, const Vec3& half_extents)
    : BoxObstacle(center, half_extents,
                  {Vec3{1, 0, 0}, Vec3{0, 1, 0}, Vec3{0, 0, 1}}) {}

bool BoxObstacle::contains(const Vec3& q) const {
  const Vec3 d = q - center_;
  for (int i = 0; i < 3; ++i) {
    if (std::abs(axes_[i].dot(d)) > half_extents_[i]) {
      return false;
    }
  }
  return true;
}

Vec3 BoxObstacle::closest_point(const Vec3& q) const {
  const Vec3 d = q - center_;
  Vec3 p = center_;
  for (int i = 0; i < 3; ++i) {
    const double l = std::clamp(axes_[i].dot(d), -half_extents_[i], half_extents_[i]);
    p += axes_[i] * l;
  }
  return p;
}

double BoxObstacle::signed_distance(const Vec3& q) const {
  const Vec3 d = q - center_;
  double outside_sq = 0.0;
  double max_inside = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < 3; ++i) {
    const double excess = std::abs(axes_[i].dot(d)) - half_extents_[i];
    if (excess > 0.0) {
      outside_sq += excess * excess;
    }
    max_inside = std::max(max_inside, excess);
  }
  return outside_sq > 0.0 ? std::sqrt(outside_sq) : max_inside;
}

PolyTrajectory3 PolyTrajectory3::constant(const Vec3& p) {
  PolyTrajectory3 traj;
  for (int k = 0; k < 3; ++k) {
    traj.coeffs[k][0] = p[k];
  }
  return traj;
}

PolyTrajectory3 PolyTrajectory3::ballistic(const Vec3& p0, const Vec3& v0,
                                           const Vec3& gravity) {
  PolyTrajectory3 traj;
  for (int k = 0; k < 3; ++k) {
    traj.coeffs[k][0] = p0[k];
    traj.coeffs[k][1] = v0[k];
    traj.coeffs[k][2] = 0.5 * gravity[k];
  }
  return traj;
}

PolyTrajectory3 PolyTrajectory3::shifted(double t0) const {
  // Binomial re-expansion: b_j = sum_{k>=j} a_k C(k,j) t0^(k-j).
  static constexpr double kBinomial[6][6] = {
      {1, 0, 0, 0, 0, 0},  {1, 1, 0, 0, 0, 0},  {1, 2, 1, 0, 0, 0},
      {1, 3, 3, 1, 0, 0},  {1, 4, 6, 4, 1, 0},  {1, 5, 10, 10, 5, 1}};
  PolyTrajectory3 out;
  for (int axis = 0; axis < 3; ++axis) {
    for (int j = 0; j < 6; ++j) {
      double b = 0.0;
      double power = 1.0;
      for (int k = j; k < 6; ++k) {
        b += coeffs[axis][k] * kBinomial[k][j] * power;
        power *= t0;
      }
      out.coeffs[axis][j] = b;
    }
  }
  return out;
}

QuinticTrajectory relative_trajectory(const QuinticTrajectory& traj,
                                      const MovingObstacle& moving) {
  const auto& o = moving.center_trajectory.coeffs;
  Vec3 alpha = traj.alpha();
  Vec3 beta = traj.beta();
  Vec3 gamma = traj.gamma();
  State initial = traj.initial();
  for (int k = 0; k < 3; ++k) {
    alpha[k] -= 120.0 * o[k][5];
    beta[k] -= 24.0 * o[k][4];
    gamma[k] -= 6.0 * o[k][3];
    initial.acceleration[k] -= 2.0 * o[k][2];
    initial.velocity[k] -= o[k][1];
    initial.position[k] -= o[k][0];
  }
  return QuinticTrajectory(alpha, beta, gamma, initial, traj.duration());
}

}  // namespace qccd

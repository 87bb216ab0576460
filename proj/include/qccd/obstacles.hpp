#pragma once

#include <array>
#include <memory>
#include <optional>

#include "qccd/geometry.hpp"
#include "qccd/trajectory.hpp"

namespace qccd {

//! Closed convex region supporting the two queries the collision algorithm
//! needs: point membership and separating-plane construction.
class ConvexObstacle {
 public:
  virtual ~ConvexObstacle() = default;

  //! True iff q lies in the closed region (boundary counts as inside).
  virtual bool contains(const Vec3& q) const = 0;

  //! Closest point of the region to q (q itself when q is inside).
  virtual Vec3 closest_point(const Vec3& q) const = 0;

  //! Euclidean distance to the boundary, negative inside.
  virtual double signed_distance(const Vec3& q) const = 0;

  //! Plane through the boundary point nearest q, normal pointing from the
  //! boundary toward q. Throws std::invalid_argument if q is inside and
  //! std::domain_error if q is within 1e-12 m of the boundary.
  Plane separating_plane(const Vec3& q) const;

  //! Non-throwing variant: nullopt when the normal would be degenerate
  //! (q within 1e-12 m of the boundary). Caller must ensure q is outside.
  std::optional<Plane> try_separating_plane(const Vec3& q) const;

  //! Region grown by r_q in every direction (conservative outer
  //! approximation for boxes). Throws std::invalid_argument if r_q < 0.
  std::shared_ptr<ConvexObstacle> enlarged(double r_q) const;

 private:
  virtual std::shared_ptr<ConvexObstacle> grow(double r_q) const = 0;
};

class SphereObstacle final : public ConvexObstacle {
 public:
  SphereObstacle(const Vec3& center, double radius);

  bool contains(const Vec3& q) const override {
    return (q - center_).squared_norm() <= radius_ * radius_;
  }
  Vec3 closest_point(const Vec3& q) const override;
  double signed_distance(const Vec3& q) const override {
    return (q - center_).norm() - radius_;
  }

  const Vec3& center() const { return center_; }
  double radius() const { return radius_; }

 private:
  std::shared_ptr<ConvexObstacle> grow(double r_q) const override {
    return std::make_shared<SphereObstacle>(center_, radius_ + r_q);
  }

  Vec3 center_;
  double radius_;
};

//! Oriented box; `axes` rows are the body axes (orthonormal within 1e-9).
class BoxObstacle final : public ConvexObstacle {
 public:
  BoxObstacle(const Vec3& center, const Vec3& half_extents,
              const std::array<Vec3, 3>& axes);
  //! Axis-aligned box.
  BoxObstacle(const Vec3& center, const Vec3& half_extents);

  bool contains(const Vec3& q) const override;
  Vec3 closest_point(const Vec3& q) const override;
  double signed_distance(const Vec3& q) const override;

  const Vec3& center() const { return center_; }
  const Vec3& half_extents() const { return half_extents_; }
  const std::array<Vec3, 3>& axes() const { return axes_; }

 private:
  std::shared_ptr<ConvexObstacle> grow(double r_q) const override {
    return std::make_shared<BoxObstacle>(
        center_, half_extents_ + Vec3{r_q, r_q, r_q}, axes_);
  }

  Vec3 center_;
  Vec3 half_extents_;
  std::array<Vec3, 3> axes_;
};

//! Per-axis monomial polynomial in t of degree <= 5 (meters, seconds);
//! the degree cap keeps relative trajectories quintic.
struct PolyTrajectory3 {
  std::array<std::array<double, 6>, 3> coeffs{};  // coeffs[axis][power]

  Vec3 eval(double t) const {
    Vec3 p;
    for (int k = 0; k < 3; ++k) {
      const auto& c = coeffs[k];
      p[k] = ((((c[5] * t + c[4]) * t + c[3]) * t + c[2]) * t + c[1]) * t + c[0];
    }
    return p;
  }

  static PolyTrajectory3 constant(const Vec3& p);
  //! Ballistic prediction p0 + v0 t + g t^2 / 2.
  static PolyTrajectory3 ballistic(const Vec3& p0, const Vec3& v0, const Vec3& gravity);
  //! Coefficients of tau -> eval(t0 + tau).
  PolyTrajectory3 shifted(double t0) const;
};

//! Convex region whose boundary does not rotate, translating along a
//! polynomial center trajectory. The shape is expressed relative to the
//! tracked center (canonically centered at the origin).
struct MovingObstacle {
  std::shared_ptr<ConvexObstacle> shape;
  PolyTrajectory3 center_trajectory;
};

//! Relative quintic x(t) - x_O(t), by coefficient-wise subtraction. Checking
//! it against the obstacle shape enlarged and held at the origin is
//! equivalent to dynamic collision checking.
QuinticTrajectory relative_trajectory(const QuinticTrajectory& traj,
                                      const MovingObstacle& moving);

}  // namespace qccd

#pragma once

#include <cmath>
#include <stdexcept>

namespace qccd {

//! 3-component inertial-frame vector (meters, or m/s etc. per context).
struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  constexpr Vec3() = default;
  constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

  constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
  double& operator[](int i) { return i == 0 ? x : (i == 1 ? y : z); }

  constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
  constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
  constexpr Vec3 operator-() const { return {-x, -y, -z}; }
  constexpr Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
  constexpr Vec3 operator/(double s) const { return {x / s, y / s, z / s}; }
  Vec3& operator+=(const Vec3& o) { x += o.x; y += o.y; z += o.z; return *this; }
  Vec3& operator-=(const Vec3& o) { x -= o.x; y -= o.y; z -= o.z; return *this; }

  constexpr double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
  constexpr double squared_norm() const { return dot(*this); }
  double norm() const { return std::sqrt(squared_norm()); }

  bool finite() const {
    return std::isfinite(x) && std::isfinite(y) && std::isfinite(z);
  }

  static constexpr Vec3 zero() { return {0.0, 0.0, 0.0}; }
};

constexpr Vec3 operator*(double s, const Vec3& v) { return v * s; }

inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}

//! Position, velocity and acceleration at one instant.
struct State {
  Vec3 position;      // m
  Vec3 velocity;      // m/s
  Vec3 acceleration;  // m/s^2

  bool finite() const {
    return position.finite() && velocity.finite() && acceleration.finite();
  }
};

//! Half-space boundary defined by a point on the plane and a unit normal.
//!
//! The constructor normalizes near-unit normals; a normal with norm below
//! 1e-9 has no usable direction and is rejected.
class Plane {
 public:
  Plane(const Vec3& point, const Vec3& normal) : point_(point) {
    if (!point.finite() || !normal.finite()) {
      throw std::invalid_argument("Plane: components must be finite");
    }
    const double n = normal.norm();
    if (n < 1e-9) {
      throw std::invalid_argument("Plane: degenerate normal");
    }
    normal_ = normal / n;
  }

  const Vec3& point() const { return point_; }
  const Vec3& normal() const { return normal_; }

 private:
  Vec3 point_;
  Vec3 normal_;
};

//! Signed distance n^T (q - p); positive on the normal side of the plane.
inline double plane_signed_distance(const Plane& plane, const Vec3& q) {
  return plane.normal().dot(q - plane.point());
}

}  // namespace qccd

#pragma once

#include <array>
#include <optional>
#include <utility>

#include "qccd/geometry.hpp"

namespace qccd {

//! Quintic position trajectory
//!
//!   x(t) = alpha/120 t^5 + beta/24 t^4 + gamma/6 t^3
//!        + a0/2 t^2 + v0 t + p0,  t in [0, T],
//!
//! the minimum-average-jerk profile for fixed boundary states (each jerk
//! component is a quadratic in t).
class QuinticTrajectory {
 public:
  QuinticTrajectory(const Vec3& alpha, const Vec3& beta, const Vec3& gamma,
                    const State& initial, double duration);

  Vec3 position(double t) const {
    return ((((alpha_ * (t / 120.0) + beta_ * (1.0 / 24.0)) * t + gamma_ * (1.0 / 6.0)) * t +
             initial_.acceleration * 0.5) * t + initial_.velocity) * t + initial_.position;
  }
  Vec3 velocity(double t) const {
    return (((alpha_ * (t / 24.0) + beta_ * (1.0 / 6.0)) * t + gamma_ * 0.5) * t +
            initial_.acceleration) * t + initial_.velocity;
  }
  Vec3 acceleration(double t) const {
    return ((alpha_ * (t / 6.0) + beta_ * 0.5) * t + gamma_) * t + initial_.acceleration;
  }
  Vec3 jerk(double t) const { return (alpha_ * (0.5 * t) + beta_) * t + gamma_; }

  State state_at(double t) const { return {position(t), velocity(t), acceleration(t)}; }

  const Vec3& alpha() const { return alpha_; }
  const Vec3& beta() const { return beta_; }
  const Vec3& gamma() const { return gamma_; }
  const State& initial() const { return initial_; }
  double duration() const { return duration_; }

  //! Mean of ||jerk(t)||^2 over [0, T], in closed form (the integrand is an
  //! exact degree-4 polynomial).
  double average_jerk_squared() const;

 private:
  Vec3 alpha_;   // m/s^5
  Vec3 beta_;    // m/s^4
  Vec3 gamma_;   // m/s^3
  State initial_;
  double duration_;  // s
};

//! Per-axis optional targets for the final position, velocity and
//! acceleration. generate() requires every axis fully constrained;
//! partially constrained variants are out of scope.
struct EndConstraint {
  std::array<std::optional<double>, 3> position;      // m
  std::array<std::optional<double>, 3> velocity;      // m/s
  std::array<std::optional<double>, 3> acceleration;  // m/s^2

  static EndConstraint full_state(const Vec3& p, const Vec3& v, const Vec3& a) {
    EndConstraint e;
    for (int k = 0; k < 3; ++k) {
      e.position[k] = p[k];
      e.velocity[k] = v[k];
      e.acceleration[k] = a[k];
    }
    return e;
  }
  //! Final state at rest: zero velocity and acceleration.
  static EndConstraint rest_at(const Vec3& p) {
    return full_state(p, Vec3::zero(), Vec3::zero());
  }

  bool fully_constrained() const {
    for (int k = 0; k < 3; ++k) {
      if (!position[k] || !velocity[k] || !acceleration[k]) return false;
    }
    return true;
  }
  //! At least one target on every axis.
  bool axis_constrained_everywhere() const {
    for (int k = 0; k < 3; ++k) {
      if (!position[k] && !velocity[k] && !acceleration[k]) return false;
    }
    return true;
  }
};

//! Solves the per-axis 3x3 boundary-value system for alpha, beta, gamma so
//! that the trajectory reaches the fully constrained end state at t = T.
QuinticTrajectory generate(const State& initial, const EndConstraint& end, double T);

//! Mass-normalized thrust and angular-rate limits, with the gravity vector
//! the thrust computation is taken against.
struct InputBounds {
  double f_min = 5.0;       // m/s^2
  double f_max = 30.0;      // m/s^2
  double omega_max = 20.0;  // rad/s
  Vec3 gravity{0.0, 0.0, -9.81};
};

enum class InputFeasibility { Feasible, Infeasible };

//! Conservative screening of f(t) = ||acceleration(t) - gravity|| against
//! [f_min, f_max] and of the angular-velocity proxy ||jerk(t)|| / f(t)
//! against omega_max. Samples a uniform grid of max(32, ceil(T / 0.01 s))
//! points plus the endpoints and applies a 2% margin on all bounds.
InputFeasibility check_input_feasibility(const QuinticTrajectory& traj,
                                         const InputBounds& bounds);

//! Range of one position component over [0, T], from the closed-form
//! critical points of the axis velocity polynomial.
std::pair<double, double> axis_position_range(const QuinticTrajectory& traj, int axis);

//! True if the trajectory position stays inside the axis-aligned box for
//! all t in [0, T].
bool stays_in_box(const QuinticTrajectory& traj, const Vec3& box_min, const Vec3& box_max);

}  // namespace qccd

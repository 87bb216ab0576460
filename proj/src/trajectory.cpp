#include "qccd/trajectory.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "qccd/rootfind.hpp"

namespace qccd {

QuinticTrajectory::QuinticTrajectory(const Vec3& alpha, const Vec3& beta,
                                     const Vec3& gamma, const State& initial,
                                     double duration)
    : alpha_(alpha), beta_(beta), gamma_(gamma), initial_(initial), duration_(duration) {
  if (!(duration > 0.0) || !std::isfinite(duration)) {
    throw std::invalid_argument("QuinticTrajectory: invalid duration");
  }
  if (!alpha.finite() || !beta.finite() || !gamma.finite() || !initial.finite()) {
    throw std::invalid_argument("QuinticTrajectory: non-finite parameters");
  }
}

double QuinticTrajectory::average_jerk_squared() const {
  const double T = duration_;
  double integral = 0.0;
  for (int k = 0; k < 3; ++k) {
    // jerk_k(t) = A t^2 + B t + C
    const double A = 0.5 * alpha_[k];
    const double B = beta_[k];
    const double C = gamma_[k];
    integral += ((((A * A / 5.0) * T + A * B / 2.0) * T + (B * B + 2.0 * A * C) / 3.0) * T +
                 B * C) * T * T + C * C * T;
  }
  return integral / T;
}

QuinticTrajectory generate(const State& initial, const EndConstraint& end, double T) {
  if (!(T > 0.0) || !std::isfinite(T)) {
    throw std::invalid_argument("generate: invalid duration");
  }
  if (!initial.finite()) {
    throw std::invalid_argument("generate: non-finite initial state");
  }
  if (!end.fully_constrained()) {
    throw std::invalid_argument("generate: end state must be fully constrained");
  }

  const double T2 = T * T;
  const double T3 = T2 * T;
  const double T4 = T3 * T;
  const double T5 = T4 * T;

  Vec3 alpha, beta, gamma;
  for (int k = 0; k < 3; ++k) {
    // Residual end state after the zero-jerk continuation of the initial state.
    const double dp = *end.position[k] -
                      (initial.position[k] + initial.velocity[k] * T +
                       0.5 * initial.acceleration[k] * T2);
    const double dv = *end.velocity[k] - (initial.velocity[k] + initial.acceleration[k] * T);
    const double da = *end.acceleration[k] - initial.acceleration[k];

    alpha[k] = (720.0 * dp - 360.0 * T * dv + 60.0 * T2 * da) / T5;
    beta[k] = (-360.0 * T * dp + 168.0 * T2 * dv - 24.0 * T3 * da) / T5;
    gamma[k] = (60.0 * T2 * dp - 24.0 * T3 * dv + 3.0 * T4 * da) / T5;
  }
  return QuinticTrajectory(alpha, beta, gamma, initial, T);
}

InputFeasibility check_input_feasibility(const QuinticTrajectory& traj,
                                         const InputBounds& bounds) {
  constexpr double kMargin = 0.02;
  const double f_lo = bounds.f_min * (1.0 + kMargin);
  const double f_hi = bounds.f_max * (1.0 - kMargin);
  const double omega_hi = bounds.omega_max * (1.0 - kMargin);

  const double T = traj.duration();
  const int n = std::max(32, static_cast<int>(std::ceil(T / 0.01)));
  const double dt = T / n;

  const auto sample_ok = [&](double t) {
    const double f = (traj.acceleration(t) - bounds.gravity).norm();
    if (f < f_lo || f > f_hi) {
      return false;
    }
    // ||omega|| <= ||jerk|| / f: never under-reports the angular rate.
    return traj.jerk(t).norm() <= omega_hi * f;
  };

  if (!sample_ok(0.0) || !sample_ok(T)) {
    return InputFeasibility::Infeasible;
  }
  for (int i = 0; i < n; ++i) {
    if (!sample_ok((i + 0.5) * dt)) {
      return InputFeasibility::Infeasible;
    }
  }
  return InputFeasibility::Feasible;
}

std::pair<double, double> axis_position_range(const QuinticTrajectory& traj, int axis) {
  const double T = traj.duration();
  const State& s0 = traj.initial();
  // Velocity component as a monomial quartic.
  RealPolynomial vel;
  vel.c = {s0.velocity[axis], s0.acceleration[axis], 0.5 * traj.gamma()[axis],
           traj.beta()[axis] / 6.0, traj.alpha()[axis] / 24.0};

  double lo = std::min(traj.position(0.0)[axis], traj.position(T)[axis]);
  double hi = std::max(traj.position(0.0)[axis], traj.position(T)[axis]);
  if (vel.max_abs_coefficient() == 0.0) {
    return {lo, hi};  // axis at rest
  }
  std::array<double, 4> roots;
  const int n = real_roots_in_interval(vel, 0.0, T, roots);
  for (int i = 0; i < n; ++i) {
    const double p = traj.position(roots[i])[axis];
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  return {lo, hi};
}

bool stays_in_box(const QuinticTrajectory& traj, const Vec3& box_min, const Vec3& box_max) {
  for (int k = 0; k < 3; ++k) {
    const auto [lo, hi] = axis_position_range(traj, k);
    if (lo < box_min[k] || hi > box_max[k]) {
      return false;
    }
  }
  return true;
}

}  // namespace qccd

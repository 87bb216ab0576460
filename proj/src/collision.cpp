#include "qccd/collision.hpp"

#include <cmath>
#include <stdexcept>

#include "qccd/rootfind.hpp"

namespace qccd {
namespace {

// Critical points closer than this to the split time or the section
// endpoints are dropped; the root tolerance would otherwise spawn
// zero-length recursive sections.
constexpr double kCritDropTol = 1e-9;  // s

struct CheckContext {
  const QuinticTrajectory& traj;
  const ConvexObstacle& obstacle;
  double t_min;
  int max_depth;
  int sections = 0;
  std::optional<double> witness;
};

double plane_distance_at(const CheckContext& ctx, const Plane& plane, double t) {
  return plane_signed_distance(plane, ctx.traj.position(t));
}

Feasibility check_section(CheckContext& ctx, double t_s, double t_f, int depth) {
  ++ctx.sections;
  const double t_split = 0.5 * (t_s + t_f);
  if (ctx.obstacle.contains(ctx.traj.position(t_split))) {
    ctx.witness = t_split;
    return Feasibility::Infeasible;
  }
  if (t_f - t_s < ctx.t_min) {
    return Feasibility::Indeterminable;
  }
  if (depth >= ctx.max_depth) {
    return Feasibility::Indeterminable;
  }

  const auto plane = ctx.obstacle.try_separating_plane(ctx.traj.position(t_split));
  if (!plane) {
    return Feasibility::Indeterminable;  // split point numerically on the boundary
  }
  const Vec3& n = plane->normal();

  // d(t) = n^T (x(t) - p); its derivative n^T xdot(t) is a quartic.
  const State& s0 = ctx.traj.initial();
  RealPolynomial d_dot;
  d_dot.c = {n.dot(s0.velocity), n.dot(s0.acceleration), 0.5 * n.dot(ctx.traj.gamma()),
             n.dot(ctx.traj.beta()) / 6.0, n.dot(ctx.traj.alpha()) / 24.0};

  std::array<double, 4> crit;
  int n_crit = 0;
  if (d_dot.max_abs_coefficient() != 0.0) {
    n_crit = real_roots_in_interval(d_dot, t_s, t_f, crit);
  }
  // else d(t) is constant and positive at t_split; endpoint checks below pass.

  // Sweep ascending over critical points in (t_split, t_f], recursing from
  // the last time known to be on the feasible side when the plane is crossed.
  double prev = t_split;
  for (int i = 0; i <= n_crit; ++i) {
    double t_i;
    if (i == n_crit) {
      t_i = t_f;
    } else {
      t_i = crit[i];
      if (t_i <= t_split + kCritDropTol || t_i >= t_f - kCritDropTol) {
        continue;
      }
    }
    if (plane_distance_at(ctx, *plane, t_i) <= 0.0) {
      const Feasibility result = check_section(ctx, prev, t_f, depth + 1);
      if (result == Feasibility::Feasible) {
        break;
      }
      return result;
    }
    prev = t_i;
  }

  // Sweep descending over critical points in [t_s, t_split).
  prev = t_split;
  for (int i = n_crit; i >= 0; --i) {
    double t_i;
    if (i == 0) {
      t_i = t_s;
    } else {
      t_i = crit[i - 1];
      if (t_i >= t_split - kCritDropTol || t_i <= t_s + kCritDropTol) {
        continue;
      }
    }
    if (plane_distance_at(ctx, *plane, t_i) <= 0.0) {
      return check_section(ctx, t_s, prev, depth + 1);
    }
    prev = t_i;
  }
  return Feasibility::Feasible;
}

}  // namespace

const char* to_string(Feasibility f) {
  switch (f) {
    case Feasibility::Feasible:
      return "feasible";
    case Feasibility::Infeasible:
      return "infeasible";
    case Feasibility::Indeterminable:
      return "indeterminable";
  }
  return "unknown";
}

CollisionVerdict collision_check(const QuinticTrajectory& traj,
                                 const ConvexObstacle& obstacle,
                                 const CheckConfig& cfg) {
  if (!(cfg.t_min > 0.0) || !std::isfinite(cfg.t_min)) {
    throw std::invalid_argument("collision_check: t_min must be positive");
  }

  CollisionVerdict verdict;
  if (obstacle.contains(traj.position(0.0))) {
    verdict.feasibility = Feasibility::Infeasible;
    verdict.witness_time = 0.0;
    return verdict;
  }
  const double T = traj.duration();
  if (obstacle.contains(traj.position(T))) {
    verdict.feasibility = Feasibility::Infeasible;
    verdict.witness_time = T;
    return verdict;
  }

  CheckContext ctx{traj, obstacle, cfg.t_min, cfg.max_recursion_depth, 0, std::nullopt};
  verdict.feasibility = check_section(ctx, 0.0, T, 0);
  verdict.witness_time = ctx.witness;
  verdict.sections_checked = ctx.sections;
  return verdict;
}

CollisionVerdict collision_check_dynamic(const QuinticTrajectory& traj,
                                         const MovingObstacle& moving, double r_q,
                                         const CheckConfig& cfg) {
  const QuinticTrajectory relative = relative_trajectory(traj, moving);
  const auto region = moving.shape->enlarged(r_q);
  return collision_check(relative, *region, cfg);
}

std::optional<double> oracle_collision_check(const QuinticTrajectory& traj,
                                             const ConvexObstacle& obstacle, double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw std::invalid_argument("oracle_collision_check: dt must be positive");
  }
  const double T = traj.duration();
  const auto steps = static_cast<long long>(T / dt);
  for (long long k = 0; k <= steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (obstacle.contains(traj.position(t))) {
      return t;
    }
  }
  if (obstacle.contains(traj.position(T))) {
    return T;
  }
  return std::nullopt;
}

}  // namespace qccd

#pragma once

#include <optional>

#include "qccd/obstacles.hpp"
#include "qccd/trajectory.hpp"

namespace qccd {

enum class Feasibility { Feasible, Infeasible, Indeterminable };

const char* to_string(Feasibility f);

//! Outcome of a collision check.
//!
//! Feasible is sound: no t in [0, T] puts the trajectory strictly inside the
//! obstacle (up to floating-point tolerance). Infeasible carries a witness
//! time at which the trajectory point is inside. Indeterminable means the
//! recursion hit the minimum section length before certifying either way.
struct CollisionVerdict {
  Feasibility feasibility = Feasibility::Feasible;
  std::optional<double> witness_time;
  int sections_checked = 0;

  bool feasible() const { return feasibility == Feasibility::Feasible; }
};

struct CheckConfig {
  double t_min = 0.002;          // s; minimum section length before giving up
  int max_recursion_depth = 64;  // backstop against floating-point cycling
};

//! Recursive separating-plane collision check of a quintic trajectory
//! against one convex obstacle over [0, duration].
CollisionVerdict collision_check(const QuinticTrajectory& traj,
                                 const ConvexObstacle& obstacle,
                                 const CheckConfig& cfg = {});

//! Dynamic-obstacle check: reduces to the static check of the relative
//! trajectory against the shape enlarged by r_q and held at the origin.
CollisionVerdict collision_check_dynamic(const QuinticTrajectory& traj,
                                         const MovingObstacle& moving, double r_q,
                                         const CheckConfig& cfg = {});

//! Discretized verification oracle: samples t = 0, dt, 2dt, ..., T and
//! returns the first sample time inside the obstacle, or nullopt if every
//! sample is clear. A dt wider than the crossing window can miss a hit.
std::optional<double> oracle_collision_check(const QuinticTrajectory& traj,
                                             const ConvexObstacle& obstacle, double dt);

}  // namespace qccd

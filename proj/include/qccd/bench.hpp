#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "qccd/collision.hpp"
#include "qccd/obstacles.hpp"
#include "qccd/trajectory.hpp"

namespace qccd {

struct TimingStats {
  double mean_us = 0.0;
  double p50_us = 0.0;
  double p99_us = 0.0;
  uint64_t count = 0;

  //! Sorts `samples_us` in place.
  static TimingStats from_samples(std::vector<double>& samples_us);
};

struct BenchOptions {
  int threads = 0;        // 0 = hardware concurrency
  bool validate = false;  // re-verify Feasible verdicts with the sampling oracle
  double validate_dt = 1e-4;
  // Avoidance loop only: hard candidate cap on top of the wall-clock budget
  // (0 = wall clock only). Makes the sampled candidate set deterministic.
  uint64_t max_candidates = 0;
};

enum class OracleValidation {
  Confirmed,  // oracle saw no inside sample
  Graze,      // inside sample with penetration within the 1e-6 m tangency allowance
  Mismatch,   // penetration beyond the allowance: the verdict was wrong
};

//! Re-verifies a Feasible verdict by dense sampling, probing at dt/1000
//! around any hit to measure the penetration depth.
OracleValidation validate_feasible_verdict(const QuinticTrajectory& traj,
                                           const ConvexObstacle& obstacle, double dt);

//! Aggregate result of the random-sphere Monte Carlo run.
struct BenchReport {
  uint64_t trials = 0;
  uint64_t seed = 0;
  uint64_t input_infeasible = 0;  // discarded before collision checking
  uint64_t checked = 0;
  uint64_t feasible = 0;
  uint64_t infeasible = 0;
  uint64_t indeterminable = 0;
  double feasible_fraction = 0.0;
  double infeasible_fraction = 0.0;
  double indeterminable_fraction = 0.0;
  TimingStats generation;
  TimingStats input_check;
  TimingStats collision;
  // validate mode: Feasible verdicts contradicted by the oracle beyond the
  // 1e-6 m tangency allowance, and shallow grazes within it.
  uint64_t validation_mismatches = 0;
  uint64_t validation_grazes = 0;
};

//! Monte Carlo benchmark: random quintic candidates from the origin against
//! one random sphere per trial; input-infeasible candidates are discarded
//! before collision checking. Verdict counts are deterministic in
//! (trials, seed) regardless of thread count.
BenchReport bench_random_sphere(uint64_t trials, uint64_t seed, const CheckConfig& cfg,
                                const BenchOptions& opts = {});

//! Aggregate result of the stopping-trajectory batch benchmark.
struct ForestReport {
  uint64_t batches = 0;
  uint64_t seed = 0;
  uint64_t batch_size = 100;
  uint64_t batches_with_feasible = 0;
  double first_feasible_success_rate = 0.0;
  TimingStats first_feasible_search_us;  // over successful batches
  uint64_t candidates = 0;
  uint64_t collision_free = 0;            // input feasible and clear of every obstacle
  double collision_free_fraction = 0.0;
  uint64_t validation_mismatches = 0;
  uint64_t validation_grazes = 0;
};

//! Batches of 100 stopping candidates from a shared sampled initial state
//! against a fixed obstacle layout; reports the time to the first fully
//! feasible candidate per batch and the overall collision-free fraction.
ForestReport bench_forest_stopping(
    uint64_t batches, uint64_t seed, const CheckConfig& cfg,
    const std::vector<std::shared_ptr<ConvexObstacle>>& layout,
    const BenchOptions& opts = {});

//! Inputs of the headless sample-and-select avoidance planning loop.
struct AvoidanceScenario {
  State initial;
  Vec3 end_box_min;  // end-position sampling space
  Vec3 end_box_max;
  double duration_min = 0.5;  // s
  double duration_max = 2.0;  // s
  Vec3 workspace_min;
  Vec3 workspace_max;
  double vehicle_radius = 0.0;
  InputBounds bounds;
  double post_horizon = 5.0;  // s; obstacle-prediction horizon beyond the maneuver
  std::vector<std::shared_ptr<ConvexObstacle>> static_obstacles;
  std::vector<MovingObstacle> moving_obstacles;
  std::optional<QuinticTrajectory> nominal;  // trajectory currently tracked, if any
};

struct AvoidanceReport {
  uint64_t seed = 0;
  double budget_ms = 0.0;
  double elapsed_ms = 0.0;
  uint64_t candidates = 0;
  uint64_t jerk_rejected = 0;
  uint64_t input_rejected = 0;
  uint64_t workspace_rejected = 0;
  uint64_t collision_rejected = 0;
  uint64_t fully_feasible = 0;
  bool found = false;
  std::optional<QuinticTrajectory> selected;  // minimum average jerk among feasible
  double selected_average_jerk = 0.0;
  std::optional<Feasibility> nominal_verdict;
  bool selected_validated = false;  // validate mode
};

//! Samples rest-end candidates for `budget_ms` of wall-clock time, applying
//! in order: jerk-cost rejection, input feasibility, workspace containment,
//! collision checks; returns the minimum-average-jerk survivor.
AvoidanceReport bench_avoidance_loop(const AvoidanceScenario& scenario, double budget_ms,
                                     uint64_t seed, const CheckConfig& cfg,
                                     const BenchOptions& opts = {});

}  // namespace qccd

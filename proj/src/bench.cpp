#include "qccd/bench.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <thread>

#include "qccd/rng.hpp"

namespace qccd {
namespace {

using Clock = std::chrono::steady_clock;

double elapsed_us(Clock::time_point start) {
  return std::chrono::duration<double, std::micro>(Clock::now() - start).count();
}

int resolve_threads(int requested) {
  if (requested > 0) {
    return requested;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : static_cast<int>(hw);
}

//! Runs body(first, last, worker) over a static partition of [0, n).
template <typename Body>
void parallel_chunks(uint64_t n, int threads, Body&& body) {
  threads = std::min<uint64_t>(std::max(threads, 1), std::max<uint64_t>(n, 1));
  if (threads == 1) {
    body(0, n, 0);
    return;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) {
    const uint64_t first = n * w / threads;
    const uint64_t last = n * (w + 1) / threads;
    pool.emplace_back([&body, first, last, w] { body(first, last, w); });
  }
  for (auto& t : pool) {
    t.join();
  }
}

//! Deepest penetration near a hit sample, probing at dt/1000 so shallow
//! grazes are not mistaken for genuine misses of the checker.
double probe_penetration(const QuinticTrajectory& traj, const ConvexObstacle& obstacle,
                         double t_hit, double dt) {
  const double lo = std::max(0.0, t_hit - dt);
  const double hi = std::min(traj.duration(), t_hit + dt);
  const double step = dt / 1000.0;
  double depth = 0.0;
  for (double t = lo; t <= hi; t += step) {
    depth = std::max(depth, -obstacle.signed_distance(traj.position(t)));
  }
  return depth;
}

constexpr double kTangencyAllowance = 1e-6;  // m

Vec3 uniform_vec3(SplitMix64& rng, double lo, double hi) {
  return {rng.uniform(lo, hi), rng.uniform(lo, hi), rng.uniform(lo, hi)};
}

}  // namespace

OracleValidation validate_feasible_verdict(const QuinticTrajectory& traj,
                                           const ConvexObstacle& obstacle, double dt) {
  const auto hit = oracle_collision_check(traj, obstacle, dt);
  if (!hit) {
    return OracleValidation::Confirmed;
  }
  return probe_penetration(traj, obstacle, *hit, dt) > kTangencyAllowance
             ? OracleValidation::Mismatch
             : OracleValidation::Graze;
}

TimingStats TimingStats::from_samples(std::vector<double>& samples_us) {
  TimingStats stats;
  stats.count = samples_us.size();
  if (samples_us.empty()) {
    return stats;
  }
  std::sort(samples_us.begin(), samples_us.end());
  double sum = 0.0;
  for (const double s : samples_us) {
    sum += s;
  }
  stats.mean_us = sum / static_cast<double>(samples_us.size());
  const auto at = [&](double q) {
    const auto idx = static_cast<size_t>(q * static_cast<double>(samples_us.size() - 1));
    return samples_us[idx];
  };
  stats.p50_us = at(0.50);
  stats.p99_us = at(0.99);
  return stats;
}

BenchReport bench_random_sphere(uint64_t trials, uint64_t seed, const CheckConfig& cfg,
                                const BenchOptions& opts) {
  const int threads = resolve_threads(opts.threads);
  const InputBounds bounds;  // 5..30 m/s^2 thrust, 20 rad/s, standard gravity

  struct Accum {
    uint64_t input_infeasible = 0;
    uint64_t feasible = 0;
    uint64_t infeasible = 0;
    uint64_t indeterminable = 0;
    uint64_t mismatches = 0;
    uint64_t grazes = 0;
    std::vector<double> gen_us, input_us, coll_us;
  };
  std::vector<Accum> accums(std::max(threads, 1));

  parallel_chunks(trials, threads, [&](uint64_t first, uint64_t last, int worker) {
    Accum& acc = accums[worker];
    acc.gen_us.reserve(last - first);
    acc.input_us.reserve(last - first);
    for (uint64_t i = first; i < last; ++i) {
      auto rng = SplitMix64::stream(seed, i);
      const Vec3 end_pos = uniform_vec3(rng, -4.0, 4.0);
      const Vec3 v0 = uniform_vec3(rng, -4.0, 4.0);
      const Vec3 vT = uniform_vec3(rng, -4.0, 4.0);
      const Vec3 a0 = uniform_vec3(rng, -4.0, 4.0);
      const Vec3 aT = uniform_vec3(rng, -4.0, 4.0);
      const double T = rng.uniform(0.2, 4.0);
      const double radius = rng.uniform(0.1, 1.5);
      const Vec3 center = uniform_vec3(rng, -4.0, 4.0);

      auto t0 = Clock::now();
      const QuinticTrajectory traj =
          generate(State{Vec3::zero(), v0, a0},
                   EndConstraint::full_state(end_pos, vT, aT), T);
      acc.gen_us.push_back(elapsed_us(t0));

      t0 = Clock::now();
      const InputFeasibility input = check_input_feasibility(traj, bounds);
      acc.input_us.push_back(elapsed_us(t0));
      if (input == InputFeasibility::Infeasible) {
        ++acc.input_infeasible;
        continue;
      }

      const SphereObstacle sphere(center, radius);
      t0 = Clock::now();
      const CollisionVerdict verdict = collision_check(traj, sphere, cfg);
      acc.coll_us.push_back(elapsed_us(t0));

      switch (verdict.feasibility) {
        case Feasibility::Feasible:
          ++acc.feasible;
          if (opts.validate) {
            const auto v = validate_feasible_verdict(traj, sphere, opts.validate_dt);
            if (v == OracleValidation::Mismatch) ++acc.mismatches;
            if (v == OracleValidation::Graze) ++acc.grazes;
          }
          break;
        case Feasibility::Infeasible:
          ++acc.infeasible;
          break;
        case Feasibility::Indeterminable:
          ++acc.indeterminable;
          break;
      }
    }
  });

  BenchReport report;
  report.trials = trials;
  report.seed = seed;
  std::vector<double> gen_us, input_us, coll_us;
  for (const Accum& acc : accums) {
    report.input_infeasible += acc.input_infeasible;
    report.feasible += acc.feasible;
    report.infeasible += acc.infeasible;
    report.indeterminable += acc.indeterminable;
    report.validation_mismatches += acc.mismatches;
    report.validation_grazes += acc.grazes;
    gen_us.insert(gen_us.end(), acc.gen_us.begin(), acc.gen_us.end());
    input_us.insert(input_us.end(), acc.input_us.begin(), acc.input_us.end());
    coll_us.insert(coll_us.end(), acc.coll_us.begin(), acc.coll_us.end());
  }
  report.checked = report.feasible + report.infeasible + report.indeterminable;
  if (report.checked > 0) {
    const double n = static_cast<double>(report.checked);
    report.feasible_fraction = static_cast<double>(report.feasible) / n;
    report.infeasible_fraction = static_cast<double>(report.infeasible) / n;
    report.indeterminable_fraction = static_cast<double>(report.indeterminable) / n;
  }
  report.generation = TimingStats::from_samples(gen_us);
  report.input_check = TimingStats::from_samples(input_us);
  report.collision = TimingStats::from_samples(coll_us);
  return report;
}

ForestReport bench_forest_stopping(
    uint64_t batches, uint64_t seed, const CheckConfig& cfg,
    const std::vector<std::shared_ptr<ConvexObstacle>>& layout,
    const BenchOptions& opts) {
  const int threads = resolve_threads(opts.threads);
  const InputBounds bounds;
  constexpr uint64_t kBatchSize = 100;

  struct Accum {
    uint64_t batches_with_feasible = 0;
    uint64_t collision_free = 0;
    uint64_t mismatches = 0;
    uint64_t grazes = 0;
    std::vector<double> first_us;
  };
  std::vector<Accum> accums(std::max(threads, 1));

  parallel_chunks(batches, threads, [&](uint64_t first, uint64_t last, int worker) {
    Accum& acc = accums[worker];
    for (uint64_t b = first; b < last; ++b) {
      auto rng = SplitMix64::stream(seed, b);
      State init;
      init.position = {-2.5, 0.0, 0.0};
      init.velocity = {rng.uniform(2.0, 8.0), rng.uniform(-2.0, 2.0),
                       rng.uniform(-2.0, 2.0)};
      init.acceleration = {rng.uniform(4.0, 10.0), rng.uniform(-2.0, 2.0),
                           rng.uniform(-2.0, 2.0)};

      bool found = false;
      const auto start = Clock::now();
      for (uint64_t j = 0; j < kBatchSize; ++j) {
        const Vec3 end_pos = uniform_vec3(rng, -2.5, 2.5);
        const double T = rng.uniform(0.5, 2.0);
        const QuinticTrajectory traj = generate(init, EndConstraint::rest_at(end_pos), T);

        bool ok = check_input_feasibility(traj, bounds) == InputFeasibility::Feasible;
        for (size_t o = 0; ok && o < layout.size(); ++o) {
          ok = collision_check(traj, *layout[o], cfg).feasible();
        }
        if (ok) {
          if (!found) {
            acc.first_us.push_back(elapsed_us(start));
            found = true;
          }
          ++acc.collision_free;
          if (opts.validate) {
            for (const auto& obstacle : layout) {
              const auto v =
                  validate_feasible_verdict(traj, *obstacle, opts.validate_dt);
              if (v == OracleValidation::Mismatch) ++acc.mismatches;
              if (v == OracleValidation::Graze) ++acc.grazes;
            }
          }
        }
      }
      if (found) {
        ++acc.batches_with_feasible;
      }
    }
  });

  ForestReport report;
  report.batches = batches;
  report.seed = seed;
  report.batch_size = kBatchSize;
  report.candidates = batches * kBatchSize;
  std::vector<double> first_us;
  for (const Accum& acc : accums) {
    report.batches_with_feasible += acc.batches_with_feasible;
    report.collision_free += acc.collision_free;
    report.validation_mismatches += acc.mismatches;
    report.validation_grazes += acc.grazes;
    first_us.insert(first_us.end(), acc.first_us.begin(), acc.first_us.end());
  }
  if (batches > 0) {
    report.first_feasible_success_rate =
        static_cast<double>(report.batches_with_feasible) / static_cast<double>(batches);
  }
  if (report.candidates > 0) {
    report.collision_free_fraction =
        static_cast<double>(report.collision_free) / static_cast<double>(report.candidates);
  }
  report.first_feasible_search_us = TimingStats::from_samples(first_us);
  return report;
}

namespace {

//! Collision screening of one candidate against the scenario, including the
//! post-maneuver clearance check against moving obstacles.
bool candidate_clear(const QuinticTrajectory& traj, const AvoidanceScenario& scenario,
                     const std::vector<std::shared_ptr<ConvexObstacle>>& enlarged_statics,
                     const CheckConfig& cfg) {
  for (const auto& obstacle : enlarged_statics) {
    if (!collision_check(traj, *obstacle, cfg).feasible()) {
      return false;
    }
  }
  const double T = traj.duration();
  for (const auto& moving : scenario.moving_obstacles) {
    if (!collision_check_dynamic(traj, moving, scenario.vehicle_radius, cfg).feasible()) {
      return false;
    }
    // The obstacle must also miss the vehicle parked at the end position for
    // the rest of the prediction horizon.
    if (scenario.post_horizon > T + 1e-9) {
      const QuinticTrajectory parked(Vec3::zero(), Vec3::zero(), Vec3::zero(),
                                     State{traj.position(T), Vec3::zero(), Vec3::zero()},
                                     scenario.post_horizon - T);
      const MovingObstacle shifted{moving.shape, moving.center_trajectory.shifted(T)};
      if (!collision_check_dynamic(parked, shifted, scenario.vehicle_radius, cfg)
               .feasible()) {
        return false;
      }
    }
  }
  return true;
}

Feasibility scenario_verdict(const QuinticTrajectory& traj,
                             const AvoidanceScenario& scenario,
                             const std::vector<std::shared_ptr<ConvexObstacle>>& statics,
                             const CheckConfig& cfg) {
  Feasibility worst = Feasibility::Feasible;
  const auto fold = [&worst](Feasibility f) {
    if (f == Feasibility::Infeasible || worst == Feasibility::Infeasible) {
      worst = Feasibility::Infeasible;
    } else if (f == Feasibility::Indeterminable) {
      worst = Feasibility::Indeterminable;
    }
  };
  for (const auto& obstacle : statics) {
    fold(collision_check(traj, *obstacle, cfg).feasibility);
  }
  for (const auto& moving : scenario.moving_obstacles) {
    fold(collision_check_dynamic(traj, moving, scenario.vehicle_radius, cfg).feasibility);
  }
  return worst;
}

}  // namespace

AvoidanceReport bench_avoidance_loop(const AvoidanceScenario& scenario, double budget_ms,
                                     uint64_t seed, const CheckConfig& cfg,
                                     const BenchOptions& opts) {
  AvoidanceReport report;
  report.seed = seed;
  report.budget_ms = budget_ms;

  std::vector<std::shared_ptr<ConvexObstacle>> enlarged_statics;
  enlarged_statics.reserve(scenario.static_obstacles.size());
  for (const auto& obstacle : scenario.static_obstacles) {
    enlarged_statics.push_back(obstacle->enlarged(scenario.vehicle_radius));
  }

  if (scenario.nominal) {
    report.nominal_verdict = scenario_verdict(*scenario.nominal, scenario,
                                              enlarged_statics, cfg);
  }

  auto rng = SplitMix64::stream(seed, 0);
  double best_jerk = std::numeric_limits<double>::infinity();
  std::optional<QuinticTrajectory> best;

  const auto start = Clock::now();
  const double budget_us = budget_ms * 1000.0;
  for (uint64_t n = 0;; ++n) {
    // Elapsed time is polled every 32 candidates to keep timer overhead small.
    if (n % 32 == 0 && elapsed_us(start) >= budget_us) {
      break;
    }
    if (opts.max_candidates > 0 && n >= opts.max_candidates) {
      break;
    }
    ++report.candidates;

    Vec3 end_pos;
    for (int k = 0; k < 3; ++k) {
      end_pos[k] = rng.uniform(scenario.end_box_min[k], scenario.end_box_max[k]);
    }
    const double T = rng.uniform(scenario.duration_min, scenario.duration_max);
    const QuinticTrajectory traj =
        generate(scenario.initial, EndConstraint::rest_at(end_pos), T);

    const double jerk = traj.average_jerk_squared();
    if (jerk >= best_jerk) {
      ++report.jerk_rejected;
      continue;
    }
    if (check_input_feasibility(traj, scenario.bounds) == InputFeasibility::Infeasible) {
      ++report.input_rejected;
      continue;
    }
    if (!stays_in_box(traj, scenario.workspace_min, scenario.workspace_max)) {
      ++report.workspace_rejected;
      continue;
    }
    if (!candidate_clear(traj, scenario, enlarged_statics, cfg)) {
      ++report.collision_rejected;
      continue;
    }
    ++report.fully_feasible;
    best_jerk = jerk;
    best = traj;
  }
  report.elapsed_ms = elapsed_us(start) / 1000.0;

  report.found = best.has_value();
  if (best) {
    report.selected = best;
    report.selected_average_jerk = best_jerk;
    if (opts.validate) {
      bool ok = true;
      for (const auto& obstacle : enlarged_statics) {
        ok = ok && validate_feasible_verdict(*best, *obstacle, opts.validate_dt) !=
                       OracleValidation::Mismatch;
      }
      for (const auto& moving : scenario.moving_obstacles) {
        const QuinticTrajectory rel = relative_trajectory(*best, moving);
        const auto region = moving.shape->enlarged(scenario.vehicle_radius);
        ok = ok && validate_feasible_verdict(rel, *region, opts.validate_dt) !=
                       OracleValidation::Mismatch;
      }
      report.selected_validated = ok;
    }
  }
  return report;
}

}  // namespace qccd

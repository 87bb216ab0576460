// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line;
// the process exits with the number of failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qccd/bench.hpp"
#include "qccd/collision.hpp"
#include "qccd/rng.hpp"
#include "qccd/rootfind.hpp"
#include "qccd/scene_io.hpp"
#include "qccd/trajectory.hpp"
#include "../support/oracles.hpp"

using namespace qccd;
using qccd::testing::poly_eval_direct;
using qccd::testing::random_benchmark_trajectory;
using qccd::testing::sign_change_brackets;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass;
  std::string details;
};

int failures = 0;

void report(int id, const std::string& name, const Outcome& outcome) {
  std::printf("[%s] criterion %d: %s (%s)\n", outcome.pass ? "PASS" : "FAIL", id,
              name.c_str(), outcome.details.c_str());
  std::fflush(stdout);
  if (!outcome.pass) {
    ++failures;
  }
}

std::string data_path(const std::string& name) {
  return std::string(QCCD_DATA_DIR) + "/" + name;
}

// Criterion 1: no Feasible verdict may be contradicted by the dt=1e-4
// sampling oracle beyond the 1e-6 m tangency allowance, over 1e5 trials
// from the benchmark distributions, single-threaded in under 5 minutes.
Outcome criterion_oracle_soundness() {
  const auto start = Clock::now();
  BenchOptions opts;
  opts.threads = 1;
  opts.validate = true;
  const BenchReport r = bench_random_sphere(100000, 20240001, {0.002, 64}, opts);
  const double elapsed = seconds_since(start);
  const bool pass = r.validation_mismatches == 0 && elapsed < 300.0;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "mismatches=%llu grazes=%llu checked=%llu elapsed=%.1fs",
                static_cast<unsigned long long>(r.validation_mismatches),
                static_cast<unsigned long long>(r.validation_grazes),
                static_cast<unsigned long long>(r.checked), elapsed);
  return {pass, buf};
}

// Criteria 2 and 3: verdict fractions at 1e6 trials within 1 percentage
// point of 95.99% / 4.01%, indeterminable below 0.1%, run under 60 s; mean
// collision-detection time below 50 us.
BenchReport criterion2_report;

Outcome criterion_table_fractions() {
  const auto start = Clock::now();
  criterion2_report = bench_random_sphere(1000000, 20240002, {0.002, 64}, {});
  const double elapsed = seconds_since(start);
  const double feasible_pct = 100.0 * criterion2_report.feasible_fraction;
  const double infeasible_pct = 100.0 * criterion2_report.infeasible_fraction;
  const double indet_pct = 100.0 * criterion2_report.indeterminable_fraction;
  const bool pass = std::abs(feasible_pct - 95.99) <= 1.0 &&
                    std::abs(infeasible_pct - 4.01) <= 1.0 && indet_pct < 0.1 &&
                    elapsed < 60.0;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "feasible=%.2f%% infeasible=%.2f%% indeterminable=%.4f%% elapsed=%.1fs",
                feasible_pct, infeasible_pct, indet_pct, elapsed);
  return {pass, buf};
}

Outcome criterion_collision_timing() {
  const double mean = criterion2_report.collision.mean_us;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "mean=%.2fus p50=%.2fus p99=%.2fus", mean,
                criterion2_report.collision.p50_us, criterion2_report.collision.p99_us);
  return {mean > 0.0 && mean < 50.0, buf};
}

// Criterion 4: stopping batches against the shipped layout. The search must
// succeed in >99% of batches with mean time-to-first-feasible under 500 us,
// and the collision-free fraction must be stable across seeds within 1 pp
// (the fraction itself is a pinned regression value for this layout).
Outcome criterion_forest_pipeline() {
  const Scene layout = load_scene(data_path("forest.json"));
  std::vector<std::shared_ptr<ConvexObstacle>> obstacles;
  for (const auto& obstacle : layout.static_obstacles) {
    obstacles.push_back(obstacle->enlarged(layout.vehicle_radius));
  }

  const ForestReport main_run =
      bench_forest_stopping(10000, 20240004, {0.002, 64}, obstacles, {});
  double frac_min = main_run.collision_free_fraction;
  double frac_max = main_run.collision_free_fraction;
  for (uint64_t seed = 1; seed <= 9; ++seed) {
    const ForestReport r =
        bench_forest_stopping(10000, seed, {0.002, 64}, obstacles, {});
    frac_min = std::min(frac_min, r.collision_free_fraction);
    frac_max = std::max(frac_max, r.collision_free_fraction);
  }

  const double fraction = main_run.collision_free_fraction;
  // 0.488 is the measured fraction for the shipped layout, pinned as a
  // regression value (the figure-derived layout has no published numbers).
  const bool pass = main_run.first_feasible_success_rate > 0.99 &&
                    main_run.first_feasible_search_us.mean_us < 500.0 &&
                    (frac_max - frac_min) < 0.01 && fraction > 0.40 &&
                    fraction < 0.80 && std::abs(fraction - 0.488) < 0.02;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "success=%.2f%% mean_first=%.1fus fraction=%.2f%% spread=%.3fpp",
                100.0 * main_run.first_feasible_success_rate,
                main_run.first_feasible_search_us.mean_us, 100.0 * fraction,
                100.0 * (frac_max - frac_min));
  return {pass, buf};
}

// Criterion 5: closed-form root solver. Residual bound on every root of 1e6
// random quartics; bracket completeness against a 1e-4 grid on 1e5 of them.
Outcome criterion_root_solver() {
  const auto start = Clock::now();
  auto rng = SplitMix64(20240005);
  constexpr double kLo = -2.0;
  constexpr double kHi = 2.0;
  uint64_t residual_violations = 0;
  uint64_t missed_brackets = 0;
  std::array<double, 4> roots;
  for (int trial = 0; trial < 1000000; ++trial) {
    RealPolynomial poly;
    for (double& c : poly.c) {
      c = rng.uniform(-10.0, 10.0);
    }
    const int n = real_roots_in_interval(poly, kLo, kHi, roots);
    const double bound =
        1e-6 * (1.0 + poly.max_abs_coefficient()) * std::max(1.0, kHi * kHi * kHi * kHi);
    for (int i = 0; i < n; ++i) {
      if (std::abs(poly_eval_direct(poly.c, roots[i])) > bound) {
        ++residual_violations;
      }
    }
    if (trial < 100000) {
      for (const double b : sign_change_brackets(poly.c, kLo, kHi, 1e-4)) {
        bool matched = false;
        for (int i = 0; i < n; ++i) {
          matched = matched || (roots[i] >= b - 1e-4 && roots[i] <= b + 2e-4);
        }
        if (!matched) {
          ++missed_brackets;
        }
      }
    }
  }
  const double elapsed = seconds_since(start);
  const bool pass = residual_violations == 0 && missed_brackets == 0 && elapsed < 30.0;
  char buf[256];
  std::snprintf(buf, sizeof(buf),
                "residual_violations=%llu missed_brackets=%llu elapsed=%.1fs",
                static_cast<unsigned long long>(residual_violations),
                static_cast<unsigned long long>(missed_brackets), elapsed);
  return {pass, buf};
}

// Criterion 6: 1e5 boundary-value problems reproduce the end state to 1e-9
// relative, and central differences confirm the derivative chain at 1e-6.
Outcome criterion_boundary_exactness() {
  auto rng = SplitMix64(20240006);
  uint64_t boundary_violations = 0;
  uint64_t derivative_violations = 0;
  constexpr double kH = 1e-5;
  for (int i = 0; i < 100000; ++i) {
    const Vec3 p0{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
    const Vec3 v0{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
    const Vec3 a0{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
    const Vec3 pT{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
    const Vec3 vT{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
    const Vec3 aT{rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-4, 4)};
    const double T = rng.uniform(0.2, 4.0);
    const auto traj =
        generate(State{p0, v0, a0}, EndConstraint::full_state(pT, vT, aT), T);
    for (int k = 0; k < 3; ++k) {
      if (std::abs(traj.position(T)[k] - pT[k]) > 1e-9 * (1.0 + std::abs(pT[k])) ||
          std::abs(traj.velocity(T)[k] - vT[k]) > 1e-9 * (1.0 + std::abs(vT[k])) ||
          std::abs(traj.acceleration(T)[k] - aT[k]) > 1e-9 * (1.0 + std::abs(aT[k]))) {
        ++boundary_violations;
      }
    }
    const double t = rng.uniform(kH, T - kH);
    const Vec3 vel_fd = (traj.position(t + kH) - traj.position(t - kH)) / (2.0 * kH);
    const Vec3 acc_fd = (traj.velocity(t + kH) - traj.velocity(t - kH)) / (2.0 * kH);
    const Vec3 jerk_fd =
        (traj.acceleration(t + kH) - traj.acceleration(t - kH)) / (2.0 * kH);
    // The central difference carries a Taylor remainder of (h^2/6) f''',
    // which dominates 1e-6 relative only for the most aggressive draws;
    // it is added explicitly so the check measures implementation error.
    const double remainder = kH * kH / 6.0 * 1.5;
    const Vec3 snap = traj.alpha() * t + traj.beta();
    if ((vel_fd - traj.velocity(t)).norm() >
            1e-6 * (1.0 + traj.velocity(t).norm()) + remainder * traj.jerk(t).norm() ||
        (acc_fd - traj.acceleration(t)).norm() >
            1e-6 * (1.0 + traj.acceleration(t).norm()) + remainder * snap.norm() ||
        (jerk_fd - traj.jerk(t)).norm() >
            1e-6 * (1.0 + traj.jerk(t).norm()) + remainder * traj.alpha().norm()) {
      ++derivative_violations;
    }
  }
  const bool pass = boundary_violations == 0 && derivative_violations == 0;
  char buf[160];
  std::snprintf(buf, sizeof(buf), "boundary_violations=%llu derivative_violations=%llu",
                static_cast<unsigned long long>(boundary_violations),
                static_cast<unsigned long long>(derivative_violations));
  return {pass, buf};
}

// Criterion 7: the dynamic-obstacle check agrees with the dense-sampling
// oracle applied to the relative trajectory on every non-Indeterminable
// verdict over 1e3 randomized instances, ballistic quadratics included.
Outcome criterion_dynamic_equivalence() {
  auto rng = SplitMix64(20240007);
  uint64_t disagreements = 0;
  uint64_t indeterminable = 0;
  for (int i = 0; i < 1000; ++i) {
    const auto traj = random_benchmark_trajectory(rng);

    MovingObstacle moving;
    const double r_q = rng.uniform(0.0, 0.5);
    if (i % 2 == 0) {
      // Ballistic projectile prediction with a 0.40 m keep-out sphere.
      moving.shape = std::make_shared<SphereObstacle>(Vec3::zero(), 0.4);
      moving.center_trajectory = PolyTrajectory3::ballistic(
          {rng.uniform(-4, 4), rng.uniform(-4, 4), rng.uniform(-2, 4)},
          {rng.uniform(-6, 6), rng.uniform(-6, 6), rng.uniform(-2, 6)},
          {0, 0, -9.81});
    } else {
      moving.shape = std::make_shared<SphereObstacle>(Vec3::zero(),
                                                      rng.uniform(0.1, 1.0));
      for (int k = 0; k < 3; ++k) {
        moving.center_trajectory.coeffs[k][0] = rng.uniform(-4, 4);
        moving.center_trajectory.coeffs[k][1] = rng.uniform(-3, 3);
        moving.center_trajectory.coeffs[k][2] = rng.uniform(-2, 2);
        moving.center_trajectory.coeffs[k][3] = rng.uniform(-1, 1);
        moving.center_trajectory.coeffs[k][4] = rng.uniform(-0.5, 0.5);
        moving.center_trajectory.coeffs[k][5] = rng.uniform(-0.25, 0.25);
      }
    }

    const auto verdict = collision_check_dynamic(traj, moving, r_q, {0.002, 64});
    const QuinticTrajectory rel = relative_trajectory(traj, moving);
    const auto region = moving.shape->enlarged(r_q);
    switch (verdict.feasibility) {
      case Feasibility::Feasible:
        if (validate_feasible_verdict(rel, *region, 1e-4) ==
            OracleValidation::Mismatch) {
          ++disagreements;
        }
        break;
      case Feasibility::Infeasible: {
        const bool oracle_hit = oracle_collision_check(rel, *region, 1e-4).has_value();
        const bool witness_ok =
            verdict.witness_time &&
            region->contains(rel.position(*verdict.witness_time));
        if (!oracle_hit && !witness_ok) {
          ++disagreements;
        }
        break;
      }
      case Feasibility::Indeterminable:
        ++indeterminable;
        break;
    }
  }
  const bool pass = disagreements == 0;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "disagreements=%llu indeterminable=%llu",
                static_cast<unsigned long long>(disagreements),
                static_cast<unsigned long long>(indeterminable));
  return {pass, buf};
}

// Criterion 8: the 15 ms headless loop evaluates >1e3 candidates per
// scenario and every selected trajectory survives oracle re-validation.
Outcome criterion_avoidance_loop() {
  uint64_t min_candidates = UINT64_MAX;
  bool all_validated = true;
  bool all_found = true;
  for (const char* name : {"scenario_surface.json", "scenario_projectile.json"}) {
    const AvoidanceScenario scenario = load_scenario(data_path(name));
    BenchOptions opts;
    opts.validate = true;
    const AvoidanceReport r =
        bench_avoidance_loop(scenario, 15.0, 20240008, {0.002, 64}, opts);
    min_candidates = std::min(min_candidates, r.candidates);
    all_found = all_found && r.found;
    all_validated = all_validated && (!r.found || r.selected_validated);
  }
  const bool pass = min_candidates > 1000 && all_found && all_validated;
  char buf[128];
  std::snprintf(buf, sizeof(buf), "min_candidates=%llu found=%d validated=%d",
                static_cast<unsigned long long>(min_candidates), all_found ? 1 : 0,
                all_validated ? 1 : 0);
  return {pass, buf};
}

}  // namespace

int main() {
  report(1, "oracle soundness of Feasible verdicts", criterion_oracle_soundness());
  report(2, "verdict fractions at one million trials", criterion_table_fractions());
  report(3, "collision-detection time order of magnitude",
         criterion_collision_timing());
  report(4, "stopping-batch pipeline and seed stability", criterion_forest_pipeline());
  report(5, "root-solver residuals and bracket completeness", criterion_root_solver());
  report(6, "boundary-value exactness and derivative chain",
         criterion_boundary_exactness());
  report(7, "dynamic-obstacle equivalence with the oracle",
         criterion_dynamic_equivalence());
  report(8, "headless avoidance loop throughput and validation",
         criterion_avoidance_loop());
  return failures;
}

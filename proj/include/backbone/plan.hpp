#pragma once

#include <cstdint>
#include <vector>

#include "backbone/collide.hpp"
#include "backbone/environment.hpp"
#include "backbone/kinematics.hpp"

namespace backbone {

struct PlannerParams {
  double attempt_time_budget = 20.0;  // wall-clock window for one batch of attempts (s)
  int max_attempts = 200;             // attempts per batch; best cost wins
  std::uint64_t rng_seed = 1;
  double step = 0.5;          // joint-space extension step (radians)
  double goal_bias = 0.05;    // probability of sampling the opposite tree root
  int shortcut_iters = 150;   // random shortcut trials after each success
  double collision_step = 0.05;  // max per-joint radians between collision checks
  int max_iters_per_attempt = 20000;
  int workers = 1;      // attempt-level parallelism; results are worker-count independent
  int max_batches = 2;  // a batch with zero solutions restarts, up to this many

  void validate() const;
};

/// Joint-space waypoint path; cost is the summed projected polyline length
/// over all robots (meters).
struct ArmPath {
  std::vector<ArmConfig> waypoints;
  double cost = 0.0;
};

/// Sum over robots of the planar polyline length traced by that robot's
/// projected joint across the waypoints.
double path_cost(const ArmPath& path, const ArmModel& model);
double path_cost(const std::vector<ArmConfig>& waypoints, const ArmModel& model);

/// Per-joint freeze mask: the maximal contiguous prefix of joints parked
/// vertically (pitch = pi/2 within 1e-6, matching yaw) in both configs.
/// Frozen joints are excluded from the planning space.
std::vector<bool> reduce_dof(const ArmConfig& start, const ArmConfig& goal);

/// Bidirectional RRT with greedy connect over the reduced joint space,
/// random shortcutting, and a best-of-attempts loop: up to max_attempts
/// seeded attempts per wall-clock batch, lowest-cost solution returned.
/// Throws InfeasibleError for invalid endpoints, PlannerTimeoutError when no
/// batch produced a solution.
ArmPath plan(const ArmModel& model, const ArmConfig& start, const ArmConfig& goal,
             const Environment& dilated_env, const PlannerParams& params);

}  // namespace backbone

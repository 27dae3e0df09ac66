#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "backbone/deploy.hpp"
#include "backbone/environment.hpp"
#include "backbone/plan.hpp"
#include "backbone/traj.hpp"

namespace backbone {

struct Mission {
  Environment env;  // raw map; dilation happens inside run_mission
  TeamSpec team;
  std::vector<Vec2> goals;
  PlannerParams params;
  double v_max = 0.5;
  double dt = 0.1;
};

enum class LegStatus { Ok, Unreachable, InsufficientRobots, PlannerTimeout, Skipped };

const char* to_string(LegStatus s);

struct LegResult {
  int leg = 0;
  Vec2 goal;
  LegStatus status = LegStatus::Skipped;
  std::string detail;
  double plan_time_s = 0.0;  // wall clock around plan() only
  double path_cost_m = 0.0;
  double exec_time_s = 0.0;
  int used_relays = 0;
  double baseline_time_s = 0.0;
  BackboneConfig backbone;
  ArmPath path;
  RobotTrajectories trajectories;
  ConnectivityReport connectivity;
};

struct MissionReport {
  std::vector<LegResult> legs;
  bool completed = false;  // every leg Ok
  double mean_plan_time_s = 0.0;
  double std_plan_time_s = 0.0;
  double total_exec_time_s = 0.0;
  double total_baseline_time_s = 0.0;
  int legs_ok = 0;
};

/// Runs deploy -> IK -> plan -> project -> audit per goal, chaining the arm
/// configuration between legs. A failed leg is recorded and aborts the
/// remaining legs (marked Skipped).
MissionReport run_mission(const Mission& mission);

struct BenchCell {
  int team_size = 0;
  int trial = 0;
  MissionReport report;
};

struct BenchReport {
  std::vector<BenchCell> cells;
  std::vector<Vec2> goals;
};

/// Per-team-size trials over one fixed goal set. Planner seeds derive from
/// (params.rng_seed, size, trial); per-leg failures stay in their cell.
BenchReport bench_team_sizes(const Environment& env, const std::vector<int>& sizes,
                             const std::vector<Vec2>& goals, int trials,
                             const TeamSpec& team_template, const PlannerParams& params,
                             double v_max, double dt);

/// Uniform rejection sampling over the dilated free space; deterministic in
/// the seed. Sorted by visibility-path length from the base so missions meet
/// goals roughly near-to-far.
std::vector<Vec2> sample_mission_goals(const Environment& dilated_env, int count,
                                       std::uint64_t seed);

std::string mission_report_to_csv(const MissionReport& report);
std::string bench_report_to_csv(const BenchReport& report);

}  // namespace backbone

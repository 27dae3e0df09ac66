#include "backbone/mission.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <sstream>

#include "backbone/errors.hpp"
#include "backbone/io.hpp"
#include "backbone/kinematics.hpp"
#include "backbone/visgraph.hpp"

namespace backbone {

namespace {

std::uint64_t mix(std::uint64_t seed, std::uint64_t salt) {
  std::uint64_t z = seed ^ (salt * 0x9e3779b97f4a7c15ULL + 0x632be59bd9b4e019ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double polyline_length(const std::vector<Vec2>& pts) {
  double acc = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) acc += distance(pts[i - 1], pts[i]);
  return acc;
}

void finalize_aggregates(MissionReport& report) {
  double sum = 0.0, sum_sq = 0.0;
  for (const LegResult& leg : report.legs) {
    if (leg.status != LegStatus::Ok) continue;
    ++report.legs_ok;
    sum += leg.plan_time_s;
    sum_sq += leg.plan_time_s * leg.plan_time_s;
    report.total_exec_time_s += leg.exec_time_s;
    report.total_baseline_time_s += leg.baseline_time_s;
  }
  report.completed = report.legs_ok == static_cast<int>(report.legs.size());
  if (report.legs_ok > 0) {
    report.mean_plan_time_s = sum / report.legs_ok;
    if (report.legs_ok > 1) {
      const double var =
          (sum_sq - sum * sum / report.legs_ok) / static_cast<double>(report.legs_ok - 1);
      report.std_plan_time_s = std::sqrt(std::max(0.0, var));
    }
  }
}

}  // namespace

const char* to_string(LegStatus s) {
  switch (s) {
    case LegStatus::Ok: return "ok";
    case LegStatus::Unreachable: return "unreachable";
    case LegStatus::InsufficientRobots: return "insufficient_robots";
    case LegStatus::PlannerTimeout: return "planner_timeout";
    case LegStatus::Skipped: return "skipped";
  }
  return "unknown";
}

MissionReport run_mission(const Mission& mission) {
  mission.team.validate();
  validate_environment(mission.env);
  const Environment dilated = dilate_obstacles(mission.env, mission.team.robot_radius);
  const ArmModel model = make_arm_model(mission.env.base_station, mission.team);

  MissionReport report;
  ArmConfig current = parked_config(model);
  BackboneConfig current_backbone = project(model, forward_kinematics(model, current));
  bool aborted = false;

  for (std::size_t i = 0; i < mission.goals.size(); ++i) {
    LegResult leg;
    leg.leg = static_cast<int>(i) + 1;
    leg.goal = mission.goals[i];
    if (aborted) {
      report.legs.push_back(std::move(leg));
      continue;
    }
    try {
      leg.backbone = deploy_backbone(dilated, mission.team, leg.goal);
      leg.used_relays = leg.backbone.used_count;
      const ArmConfig goal_cfg = inverse_kinematics(model, leg.backbone);

      PlannerParams params = mission.params;
      params.rng_seed = mix(mission.params.rng_seed, static_cast<std::uint64_t>(i));
      const auto t0 = std::chrono::steady_clock::now();
      leg.path = plan(model, current, goal_cfg, dilated, params);
      const auto t1 = std::chrono::steady_clock::now();
      leg.plan_time_s = std::chrono::duration<double>(t1 - t0).count();
      leg.path_cost_m = leg.path.cost;

      leg.trajectories = to_robot_trajectories(leg.path, model, mission.v_max, mission.dt,
                                               mission.params.collision_step);
      leg.exec_time_s = leg.trajectories.duration();
      // Audit against the raw map: radio truth, not the planning inflation.
      leg.connectivity = validate_connectivity(leg.trajectories, mission.env, mission.team);
      leg.baseline_time_s =
          baseline_over_backbone(current_backbone, leg.backbone, dilated, mission.team,
                                 mission.v_max);

      leg.status = LegStatus::Ok;
      current = goal_cfg;
      current_backbone = leg.backbone;
    } catch (const InsufficientRobotsError& e) {
      leg.status = LegStatus::InsufficientRobots;
      leg.detail = e.what();
      aborted = true;
    } catch (const InfeasibleError& e) {
      leg.status = LegStatus::Unreachable;
      leg.detail = e.what();
      aborted = true;
    } catch (const PlannerTimeoutError& e) {
      leg.status = LegStatus::PlannerTimeout;
      leg.detail = e.what();
      aborted = true;
    }
    report.legs.push_back(std::move(leg));
  }
  finalize_aggregates(report);
  return report;
}

BenchReport bench_team_sizes(const Environment& env, const std::vector<int>& sizes,
                             const std::vector<Vec2>& goals, int trials,
                             const TeamSpec& team_template, const PlannerParams& params,
                             double v_max, double dt) {
  if (trials <= 0) throw ValidationError("bench: trials must be > 0");
  team_template.validate();
  const double radius = team_template.comm_radius.front();

  BenchReport bench;
  bench.goals = goals;
  for (int size : sizes) {
    for (int trial = 0; trial < trials; ++trial) {
      Mission mission;
      mission.env = env;
      mission.team = TeamSpec::homogeneous(size, radius, team_template.safety_gap,
                                           team_template.robot_radius);
      mission.goals = goals;
      mission.params = params;
      mission.params.rng_seed = mix(params.rng_seed, static_cast<std::uint64_t>(size) * 1000 +
                                                         static_cast<std::uint64_t>(trial));
      mission.v_max = v_max;
      mission.dt = dt;

      BenchCell cell;
      cell.team_size = size;
      cell.trial = trial;
      cell.report = run_mission(mission);
      bench.cells.push_back(std::move(cell));
    }
  }
  return bench;
}

std::vector<Vec2> sample_mission_goals(const Environment& dilated_env, int count,
                                       std::uint64_t seed) {
  if (count <= 0) return {};
  std::uint64_t state = seed;
  const auto next_uniform = [&state] {
    state = mix(state, 0x5851f42d4c957f2dULL);
    return static_cast<double>(state >> 11) * 0x1.0p-53;
  };

  std::vector<Vec2> goals;
  const Rect& b = dilated_env.bounds;
  int guard = 0;
  while (static_cast<int>(goals.size()) < count) {
    if (++guard > 100000 * count)
      throw InfeasibleError("goal sampling: free space too small to sample");
    Vec2 p{b.min.x + next_uniform() * b.width(), b.min.y + next_uniform() * b.height()};
    if (!point_in_free_space(p, dilated_env)) continue;
    if (nearly_equal(p, dilated_env.base_station, 1e-6)) continue;
    goals.push_back(p);
  }

  // Order near-to-far by visibility-path length from the base.
  std::vector<Vec2> extras = goals;
  extras.push_back(dilated_env.base_station);
  const VisibilityGraph g = build_visibility_graph(dilated_env, extras);
  std::vector<std::pair<double, std::size_t>> keyed;
  for (std::size_t i = 0; i < goals.size(); ++i) {
    double len = std::numeric_limits<double>::infinity();
    try {
      len = polyline_length(shortest_path(g, dilated_env.base_station, goals[i]));
    } catch (const InfeasibleError&) {
    }
    keyed.emplace_back(len, i);
  }
  std::stable_sort(keyed.begin(), keyed.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Vec2> ordered;
  ordered.reserve(goals.size());
  for (const auto& [len, idx] : keyed) ordered.push_back(goals[idx]);
  return ordered;
}

std::string mission_report_to_csv(const MissionReport& report) {
  std::ostringstream out;
  out << "leg,goal_x,goal_y,status,plan_time_s,path_cost_m,exec_time_s,used_relays,"
         "baseline_time_s\n";
  for (const LegResult& leg : report.legs) {
    out << leg.leg << "," << format_number(leg.goal.x) << "," << format_number(leg.goal.y) << ","
        << to_string(leg.status) << "," << format_number(leg.plan_time_s) << ","
        << format_number(leg.path_cost_m) << "," << format_number(leg.exec_time_s) << ","
        << leg.used_relays << "," << format_number(leg.baseline_time_s) << "\n";
  }
  out << "# legs_ok " << report.legs_ok << "\n";
  out << "# mean_plan_time_s " << format_number(report.mean_plan_time_s) << "\n";
  out << "# std_plan_time_s " << format_number(report.std_plan_time_s) << "\n";
  out << "# total_exec_time_s " << format_number(report.total_exec_time_s) << "\n";
  out << "# total_baseline_time_s " << format_number(report.total_baseline_time_s) << "\n";
  return out.str();
}

std::string bench_report_to_csv(const BenchReport& report) {
  std::ostringstream out;
  out << "team_size,trial,legs_ok,mean_plan_time_s,std_plan_time_s,total_exec_time_s,"
         "total_baseline_time_s,time_ratio\n";
  std::vector<int> sizes;
  for (const BenchCell& cell : report.cells) {
    const MissionReport& r = cell.report;
    const double ratio =
        r.total_baseline_time_s > 0.0 ? r.total_exec_time_s / r.total_baseline_time_s : 0.0;
    out << cell.team_size << "," << cell.trial << "," << r.legs_ok << ","
        << format_number(r.mean_plan_time_s) << "," << format_number(r.std_plan_time_s) << ","
        << format_number(r.total_exec_time_s) << "," << format_number(r.total_baseline_time_s)
        << "," << format_number(ratio) << "\n";
    if (std::find(sizes.begin(), sizes.end(), cell.team_size) == sizes.end())
      sizes.push_back(cell.team_size);
  }
  // Per-size aggregates over trials.
  for (int size : sizes) {
    std::vector<double> means;
    double exec = 0.0, base = 0.0;
    for (const BenchCell& cell : report.cells) {
      if (cell.team_size != size) continue;
      means.push_back(cell.report.mean_plan_time_s);
      exec += cell.report.total_exec_time_s;
      base += cell.report.total_baseline_time_s;
    }
    double mean = 0.0;
    for (double m : means) mean += m / means.size();
    double var = 0.0;
    for (double m : means) var += (m - mean) * (m - mean);
    const double stddev = means.size() > 1 ? std::sqrt(var / (means.size() - 1)) : 0.0;
    out << "# size " << size << " plan_time_mean_s " << format_number(mean)
        << " plan_time_std_s " << format_number(stddev) << " time_ratio "
        << format_number(base > 0.0 ? exec / base : 0.0) << "\n";
  }
  return out.str();
}

}  // namespace backbone

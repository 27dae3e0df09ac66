#include "backbone/traj.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "backbone/errors.hpp"
#include "backbone/io.hpp"
#include "backbone/kinematics.hpp"

namespace backbone {

namespace {

std::vector<Vec2> project_positions(const ArmModel& model, const ArmConfig& cfg) {
  const std::vector<Vec3> joints = forward_kinematics(model, cfg);
  std::vector<Vec2> out;
  out.reserve(joints.size());
  for (const Vec3& j : joints) out.push_back(j.xy());
  return out;
}

/// Arc length from the polyline start to the vertex matching `target`.
/// Returns the full length when the point is not on the polyline (callers
/// validate inputs first, so this only happens for the leader endpoint).
double arc_to_point(const std::vector<Vec2>& polyline, const Vec2& target) {
  double acc = 0.0;
  for (std::size_t i = 0; i < polyline.size(); ++i) {
    if (i > 0) acc += distance(polyline[i - 1], polyline[i]);
    if (nearly_equal(polyline[i], target, 1e-6)) return acc;
  }
  return acc;
}

/// Arc length of the maximal common prefix of two chain polylines.
double common_prefix_arc(const std::vector<Vec2>& a, const std::vector<Vec2>& b) {
  double acc = 0.0;
  std::size_t i = 0;
  while (i + 1 < a.size() && i + 1 < b.size() && nearly_equal(a[i], b[i], 1e-6)) {
    if (!nearly_equal(a[i + 1], b[i + 1], 1e-6)) break;
    acc += distance(a[i], a[i + 1]);
    ++i;
  }
  return acc;
}

}  // namespace

RobotTrajectories to_robot_trajectories(const ArmPath& path, const ArmModel& model, double v_max,
                                        double dt, double joint_step) {
  if (path.waypoints.empty()) throw ValidationError("trajectories: empty arm path");
  if (v_max <= 0.0 || dt <= 0.0 || joint_step <= 0.0)
    throw ValidationError("trajectories: v_max, dt and joint_step must be > 0");

  // Dense FK samples along the joint-space path.
  std::vector<std::vector<Vec2>> dense;
  dense.push_back(project_positions(model, path.waypoints.front()));
  std::vector<double> times{0.0};
  for (std::size_t w = 1; w < path.waypoints.size(); ++w) {
    const ArmConfig& a = path.waypoints[w - 1];
    const ArmConfig& b = path.waypoints[w];
    const int steps = std::max(1, static_cast<int>(std::ceil(max_joint_delta(a, b) / joint_step)));
    for (int s = 1; s <= steps; ++s) {
      const std::vector<Vec2> pos =
          project_positions(model, interpolate_config(a, b, static_cast<double>(s) / steps));
      double worst = 0.0;
      for (std::size_t r = 0; r < pos.size(); ++r)
        worst = std::max(worst, distance(dense.back()[r], pos[r]));
      if (worst <= 1e-12) continue;  // keep timestamps strictly increasing
      times.push_back(times.back() + worst / v_max);
      dense.push_back(pos);
    }
  }

  RobotTrajectories tr;
  const double total = times.back();
  if (dense.size() == 1 || total <= 0.0) {
    tr.timestamps = {0.0};
    tr.positions = {dense.front()};
    return tr;
  }

  // Resample onto the shared dt grid (plus the exact final time).
  std::size_t seg = 0;
  const auto sample_at = [&](double t) {
    while (seg + 2 < times.size() && times[seg + 1] < t) ++seg;
    const double t0 = times[seg], t1 = times[seg + 1];
    const double u = t1 > t0 ? std::clamp((t - t0) / (t1 - t0), 0.0, 1.0) : 0.0;
    std::vector<Vec2> pos(dense[seg].size());
    for (std::size_t r = 0; r < pos.size(); ++r)
      pos[r] = dense[seg][r] + (dense[seg + 1][r] - dense[seg][r]) * u;
    return pos;
  };
  for (std::size_t k = 0;; ++k) {
    const double t = static_cast<double>(k) * dt;
    if (t >= total - 1e-9) break;
    tr.timestamps.push_back(t);
    tr.positions.push_back(sample_at(t));
  }
  tr.timestamps.push_back(total);
  tr.positions.push_back(dense.back());
  return tr;
}

ConnectivityReport validate_connectivity(const RobotTrajectories& tr, const Environment& env,
                                         const TeamSpec& team) {
  team.validate();
  ConnectivityReport report;
  report.timestamps = tr.timestamps;
  if (tr.robot_count() != static_cast<std::size_t>(team.n_relays) + 1)
    throw ValidationError("connectivity: trajectory robot count does not match team");
  const std::size_t edges = tr.robot_count();  // base->r1, ..., rN->leader
  report.max_distance.assign(edges, 0.0);
  for (std::size_t k = 0; k < tr.timestamps.size(); ++k) {
    std::vector<EdgeSample> row(edges);
    Vec2 prev = env.base_station;
    for (std::size_t e = 0; e < edges; ++e) {
      const Vec2& cur = tr.positions[k][e];
      EdgeSample sample;
      sample.distance = distance(prev, cur);
      sample.visible = line_of_sight(prev, cur, env);
      report.max_distance[e] = std::max(report.max_distance[e], sample.distance);
      if (sample.distance > team.comm_radius[e] + kGeomEps) ++report.radius_violations;
      if (!sample.visible) ++report.visibility_violations;
      row[e] = sample;
      prev = cur;
    }
    report.samples.push_back(std::move(row));
  }
  return report;
}

double baseline_over_backbone(const BackboneConfig& start_cfg, const BackboneConfig& goal_cfg,
                              const Environment& dilated_env, const TeamSpec& team, double v_max) {
  if (v_max <= 0.0) throw ValidationError("baseline: v_max must be > 0");
  if (!nearly_equal(start_cfg.base, goal_cfg.base))
    throw InfeasibleError("baseline: configs do not share a base station");
  if (!validate_backbone(start_cfg, dilated_env, team).pass ||
      !validate_backbone(goal_cfg, dilated_env, team).pass)
    throw InfeasibleError("baseline: input configs are not valid backbones");

  const std::vector<Vec2> old_line = start_cfg.active_polyline();
  const std::vector<Vec2> new_line = goal_cfg.active_polyline();
  const double shared = common_prefix_arc(old_line, new_line);

  const std::vector<Vec2> from = start_cfg.chain();
  const std::vector<Vec2> to = goal_cfg.chain();
  double total = 0.0;
  for (std::size_t i = 1; i < from.size(); ++i) {  // every robot incl. the leader
    const double s_old = arc_to_point(old_line, from[i]);
    const double s_new = arc_to_point(new_line, to[i]);
    const double keep = std::min({shared, s_old, s_new});
    total += (s_old - keep) + (s_new - keep);
  }
  return total / v_max;
}

std::string trajectories_to_csv(const RobotTrajectories& tr) {
  std::ostringstream out;
  out << "t";
  const std::size_t robots = tr.robot_count();
  for (std::size_t r = 0; r + 1 < robots; ++r) out << ",r" << (r + 1) << "_x,r" << (r + 1) << "_y";
  if (robots > 0) out << ",leader_x,leader_y";
  out << "\n";
  for (std::size_t k = 0; k < tr.timestamps.size(); ++k) {
    out << format_number(tr.timestamps[k]);
    for (const Vec2& p : tr.positions[k])
      out << "," << format_number(p.x) << "," << format_number(p.y);
    out << "\n";
  }
  return out.str();
}

std::string connectivity_to_csv(const ConnectivityReport& report) {
  std::ostringstream out;
  out << "t,edge,distance,visible\n";
  for (std::size_t k = 0; k < report.timestamps.size(); ++k) {
    for (std::size_t e = 0; e < report.samples[k].size(); ++e) {
      const EdgeSample& s = report.samples[k][e];
      out << format_number(report.timestamps[k]) << "," << e << ","
          << format_number(s.distance) << "," << (s.visible ? 1 : 0) << "\n";
    }
  }
  for (std::size_t e = 0; e < report.max_distance.size(); ++e)
    out << "# edge " << e << " max_distance " << format_number(report.max_distance[e]) << "\n";
  out << "# radius_violations " << report.radius_violations << "\n";
  out << "# visibility_violations " << report.visibility_violations << "\n";
  return out.str();
}

}  // namespace backbone

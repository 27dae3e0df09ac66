#include <doctest.h>

#include <cmath>

#include "backbone/deploy.hpp"
#include "backbone/errors.hpp"
#include "backbone/kinematics.hpp"
#include "backbone/plan.hpp"
#include "backbone/traj.hpp"
#include "oracles.hpp"

using namespace backbone;

namespace {

Environment world(double half = 20.0) {
  Environment env;
  env.bounds.min = {-half, -half};
  env.bounds.max = {half, half};
  env.base_station = {0, 0};
  return env;
}

ArmModel model_of(const Environment& env, std::size_t joints, double len = 4.5) {
  ArmModel model;
  model.base = env.base_station;
  model.link_lengths.assign(joints, len);
  return model;
}

ArmConfig ik_to(const ArmModel& model, const Environment& env, std::vector<Vec2> chain_tail) {
  BackboneConfig cfg;
  cfg.base = env.base_station;
  cfg.leader_position = chain_tail.back();
  chain_tail.pop_back();
  cfg.relay_positions = std::move(chain_tail);
  return inverse_kinematics(model, cfg);
}

}  // namespace

TEST_CASE("single waypoint: static robots, zero duration") {
  const Environment env = world();
  const ArmModel model = model_of(env, 2);
  ArmPath path;
  path.waypoints = {parked_config(model)};
  const RobotTrajectories tr = to_robot_trajectories(path, model, 0.5, 0.1);
  REQUIRE(tr.timestamps.size() == 1);
  CHECK(tr.duration() == 0.0);
  CHECK(tr.robot_count() == 2);
}

TEST_CASE("one robot moving 3 m at 0.5 m/s takes 6 s") {
  const Environment env = world();
  const ArmModel model = model_of(env, 1);
  ArmPath path;
  path.waypoints = {ik_to(model, env, {{1.0, 0.0}}), ik_to(model, env, {{4.0, 0.0}})};
  const RobotTrajectories tr = to_robot_trajectories(path, model, 0.5, 0.1);
  CHECK(tr.duration() == doctest::Approx(6.0).epsilon(1e-6));
  // Shared strictly-increasing grid at dt spacing.
  for (std::size_t k = 1; k < tr.timestamps.size(); ++k) {
    CHECK(tr.timestamps[k] > tr.timestamps[k - 1]);
    if (k + 1 < tr.timestamps.size())
      CHECK(tr.timestamps[k] - tr.timestamps[k - 1] == doctest::Approx(0.1).epsilon(1e-9));
  }
}

TEST_CASE("duration equals the slowest robot's arc length over v_max") {
  const Environment env = world();
  const ArmModel model = model_of(env, 3);
  ArmPath path;
  path.waypoints = {parked_config(model),
                    ik_to(model, env, {{2.5, 0.5}, {5.5, 1.5}, {8.0, 3.0}})};
  const double v = 0.5;
  const RobotTrajectories tr = to_robot_trajectories(path, model, v, 0.05);

  // Oracle: per-robot arc from very dense FK sampling of the same segment.
  const int steps = 5000;
  std::vector<double> arc(model.joint_count(), 0.0);
  std::vector<Vec2> prev;
  for (int s = 0; s <= steps; ++s) {
    const auto joints = forward_kinematics(
        model, interpolate_config(path.waypoints[0], path.waypoints[1], double(s) / steps));
    std::vector<Vec2> cur;
    for (const auto& j : joints) cur.push_back(j.xy());
    if (s > 0)
      for (std::size_t r = 0; r < cur.size(); ++r) arc[r] += distance(prev[r], cur[r]);
    prev = cur;
  }
  double slowest = 0.0;
  for (double a : arc) slowest = std::max(slowest, a);
  CHECK(tr.duration() == doctest::Approx(slowest / v).epsilon(0.02));
  // The timed path is piecewise linear, so it can only undercut the smooth
  // arc by the chord discretization, never exceed it.
  CHECK(tr.duration() <= slowest / v + 1e-9);
  CHECK(tr.duration() >= 0.99 * slowest / v);
}

TEST_CASE("speed limit holds between all samples") {
  const Environment env = world();
  const ArmModel model = model_of(env, 2);
  ArmPath path;
  path.waypoints = {parked_config(model), ik_to(model, env, {{3.0, 1.0}, {6.0, -1.0}}),
                    ik_to(model, env, {{0.0, 4.0}, {4.0, 4.0}})};
  const double v = 0.5;
  const RobotTrajectories tr = to_robot_trajectories(path, model, v, 0.1);
  for (std::size_t k = 1; k < tr.timestamps.size(); ++k) {
    const double dt = tr.timestamps[k] - tr.timestamps[k - 1];
    for (std::size_t r = 0; r < tr.robot_count(); ++r)
      CHECK(distance(tr.positions[k][r], tr.positions[k - 1][r]) <= v * dt + 1e-9);
  }
}

TEST_CASE("connectivity audit passes for planned motion and flags teleports") {
  const Environment env = world();
  const TeamSpec team = TeamSpec::homogeneous(1, 5.0, 0.5, 0.0);
  const ArmModel model = make_arm_model(env.base_station, team);
  ArmPath path;
  path.waypoints = {parked_config(model), ik_to(model, env, {{2.0, 1.0}, {5.0, 2.0}})};
  const RobotTrajectories tr = to_robot_trajectories(path, model, 0.5, 0.1);
  const ConnectivityReport ok = validate_connectivity(tr, env, team);
  CHECK(ok.pass());
  CHECK(ok.violations() == 0);
  for (double d : ok.max_distance) CHECK(d <= 4.5 + 1e-9);

  RobotTrajectories broken = tr;
  broken.positions.back()[0] = {10.0, 0.0};  // relay teleports out of radius
  const ConnectivityReport bad = validate_connectivity(broken, env, team);
  CHECK(bad.radius_violations >= 1);
  CHECK_FALSE(bad.pass());
}

TEST_CASE("audit counts occlusion violations") {
  Environment env = world();
  Polygon block;
  block.pts = {{4, -1}, {6, -1}, {6, 1}, {4, 1}};
  env.obstacles.push_back(block);
  const TeamSpec team = TeamSpec::homogeneous(1, 5.0, 0.5, 0.0);
  RobotTrajectories tr;
  tr.timestamps = {0.0};
  tr.positions = {{Vec2{3.0, 0.0}, Vec2{7.0, 0.0}}};  // relay and leader on opposite sides
  const ConnectivityReport report = validate_connectivity(tr, env, team);
  CHECK(report.visibility_violations >= 1);
}

TEST_CASE("baseline: identity relocation costs nothing") {
  const Environment env = world();
  const TeamSpec team = TeamSpec::homogeneous(2, 5.0, 0.5, 0.0);
  const BackboneConfig cfg = deploy_backbone(env, team, {8.0, 0.0});
  CHECK(baseline_over_backbone(cfg, cfg, env, team, 0.5) == doctest::Approx(0.0));
}

TEST_CASE("baseline: 9 m single-robot relocation at 0.5 m/s takes 18 s") {
  const Environment env = world();
  const TeamSpec team = TeamSpec::homogeneous(1, 5.0, 0.5, 0.0);
  BackboneConfig start;
  start.base = env.base_station;
  start.relay_positions = {env.base_station};
  start.leader_position = {4.5, 0.0};
  start.used_count = 0;
  BackboneConfig goal = start;
  goal.leader_position = {0.0, 4.5};
  CHECK(baseline_over_backbone(start, goal, env, team, 0.5) == doctest::Approx(18.0));
}

TEST_CASE("baseline rejects mismatched bases and invalid chains") {
  const Environment env = world();
  const TeamSpec team = TeamSpec::homogeneous(1, 5.0, 0.5, 0.0);
  BackboneConfig a;
  a.base = {0, 0};
  a.relay_positions = {{0, 0}};
  a.leader_position = {1, 0};
  BackboneConfig b = a;
  b.base = {1, 1};
  CHECK_THROWS_AS(baseline_over_backbone(a, b, env, team, 0.5), InfeasibleError);
  BackboneConfig c = a;
  c.leader_position = {9.0, 0.0};  // link too long
  CHECK_THROWS_AS(baseline_over_backbone(a, c, env, team, 0.5), InfeasibleError);
}

TEST_CASE("csv export carries every robot column and summary lines") {
  const Environment env = world();
  const TeamSpec team = TeamSpec::homogeneous(1, 5.0, 0.5, 0.0);
  const ArmModel model = make_arm_model(env.base_station, team);
  ArmPath path;
  path.waypoints = {parked_config(model), ik_to(model, env, {{2.0, 0.0}, {4.0, 0.0}})};
  const RobotTrajectories tr = to_robot_trajectories(path, model, 0.5, 0.1);
  const std::string csv = trajectories_to_csv(tr);
  CHECK(csv.rfind("t,r1_x,r1_y,leader_x,leader_y\n", 0) == 0);
  const ConnectivityReport report = validate_connectivity(tr, env, team);
  const std::string conn = connectivity_to_csv(report);
  CHECK(conn.find("# radius_violations 0") != std::string::npos);
  CHECK(conn.find("# visibility_violations 0") != std::string::npos);
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "backbone/collide.hpp"
#include "backbone/errors.hpp"
#include "backbone/kinematics.hpp"
#include "backbone/plan.hpp"
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

Polygon rect(double x0, double y0, double x1, double y1) {
  Polygon p;
  p.pts = {{x0, y0}, {x1, y0}, {x1, y1}, {x0, y1}};
  return p;
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

PlannerParams quick_params(std::uint64_t seed = 7, int attempts = 3) {
  PlannerParams p;
  p.rng_seed = seed;
  p.max_attempts = attempts;
  p.attempt_time_budget = 120.0;  // never binds in tests
  p.shortcut_iters = 80;
  p.max_iters_per_attempt = 8000;
  return p;
}

bool paths_equal(const ArmPath& a, const ArmPath& b) {
  if (a.waypoints.size() != b.waypoints.size()) return false;
  for (std::size_t i = 0; i < a.waypoints.size(); ++i)
    if (max_joint_delta(a.waypoints[i], b.waypoints[i]) > 0.0) return false;
  return a.cost == b.cost;
}

}  // namespace

TEST_CASE("paper-regime defaults: 20 s window, 200 attempts") {
  const PlannerParams params;
  CHECK(params.attempt_time_budget == 20.0);
  CHECK(params.max_attempts == 200);
  CHECK_NOTHROW(params.validate());
}

TEST_CASE("start equals goal: single waypoint, zero cost") {
  const Environment env = world();
  const ArmModel model = model_of(env, 3);
  const ArmConfig start = parked_config(model);
  const ArmPath path = plan(model, start, start, env, quick_params());
  CHECK(path.waypoints.size() == 1);
  CHECK(path.cost == 0.0);
}

TEST_CASE("invalid endpoints are rejected") {
  Environment env = world();
  env.obstacles.push_back(rect(2, -1, 3, 1));
  const ArmModel model = model_of(env, 1);
  const ArmConfig bad = {{0.0, 0.0}};  // flat through the block
  const ArmConfig good = parked_config(model);
  CHECK_THROWS_AS(plan(model, bad, good, env, quick_params()), InfeasibleError);
  CHECK_THROWS_AS(plan(model, good, bad, env, quick_params()), InfeasibleError);
}

TEST_CASE("empty map: cost close to the straight-line interpolation oracle") {
  const Environment env = world();
  const ArmModel model = model_of(env, 1);
  const ArmConfig start = ik_to(model, env, {{2.0, 1.0}});
  const ArmConfig goal = ik_to(model, env, {{-1.0, 3.0}});
  const ArmPath path = plan(model, start, goal, env, quick_params());

  // Oracle: dense FK arc length along the straight joint-space segment.
  double arc = 0.0;
  std::vector<Vec2> prev;
  const int steps = 2000;
  for (int s = 0; s <= steps; ++s) {
    const auto joints =
        forward_kinematics(model, interpolate_config(start, goal, double(s) / steps));
    std::vector<Vec2> cur;
    for (const auto& j : joints) cur.push_back(j.xy());
    if (s > 0)
      for (std::size_t r = 0; r < cur.size(); ++r) arc += distance(prev[r], cur[r]);
    prev = cur;
  }
  CHECK(path.cost <= arc * 1.05);
  CHECK(path.cost >= distance({2.0, 1.0}, {-1.0, 3.0}) - 1e-9);  // displacement lower bound
}

TEST_CASE("returned paths satisfy the ArmPath invariants") {
  Environment env = world();
  env.obstacles.push_back(rect(3, -2, 5, 2));
  const ArmModel model = model_of(env, 2);
  const ArmConfig start = parked_config(model);
  const ArmConfig goal = ik_to(model, env, {{3.0, 2.4}, {6.5, 3.4}});
  const PlannerParams params = quick_params(11);
  const ArmPath path = plan(model, start, goal, env, params);

  REQUIRE(path.waypoints.size() >= 2);
  CHECK(max_joint_delta(path.waypoints.front(), start) <= 1e-9);
  CHECK(max_joint_delta(path.waypoints.back(), goal) <= 1e-9);
  for (std::size_t i = 1; i < path.waypoints.size(); ++i)
    CHECK(segment_valid(model, path.waypoints[i - 1], path.waypoints[i], env,
                        params.collision_step));
  CHECK(path.cost == doctest::Approx(path_cost(path, model)));
}

TEST_CASE("identical seeds reproduce the identical path") {
  Environment env = world();
  env.obstacles.push_back(rect(3, -2, 5, 2));
  const ArmModel model = model_of(env, 2);
  const ArmConfig start = parked_config(model);
  const ArmConfig goal = ik_to(model, env, {{3.0, 2.4}, {6.5, 3.4}});
  const ArmPath a = plan(model, start, goal, env, quick_params(19));
  const ArmPath b = plan(model, start, goal, env, quick_params(19));
  CHECK(paths_equal(a, b));
  const ArmPath c = plan(model, start, goal, env, quick_params(20));
  CHECK(c.cost > 0.0);  // different seed still solves
}

TEST_CASE("worker count does not change the result") {
  Environment env = world();
  env.obstacles.push_back(rect(3, -2, 5, 2));
  const ArmModel model = model_of(env, 2);
  const ArmConfig start = parked_config(model);
  const ArmConfig goal = ik_to(model, env, {{3.0, 2.4}, {6.5, 3.4}});
  PlannerParams one = quick_params(23, 4);
  PlannerParams four = one;
  four.workers = 4;
  CHECK(paths_equal(plan(model, start, goal, env, one), plan(model, start, goal, env, four)));
}

TEST_CASE("more attempts can only lower the reported cost") {
  Environment env = world();
  env.obstacles.push_back(rect(3, -2, 5, 2));
  const ArmModel model = model_of(env, 2);
  const ArmConfig start = parked_config(model);
  const ArmConfig goal = ik_to(model, env, {{3.0, 2.4}, {6.5, 3.4}});
  const ArmPath few = plan(model, start, goal, env, quick_params(31, 1));
  const ArmPath many = plan(model, start, goal, env, quick_params(31, 6));
  CHECK(many.cost <= few.cost + 1e-12);
}

TEST_CASE("reduce_dof freezes the common parked prefix") {
  const Environment env = world();
  const ArmModel model = model_of(env, 5);  // 4 relays + leader
  const ArmConfig vertical = parked_config(model);

  // Both fully parked: everything frozen.
  auto mask = reduce_dof(vertical, vertical);
  for (bool frozen : mask) CHECK(frozen);

  // Both use 2 of 4 robots: the first 2 joints stay frozen (6 DOF planning).
  const ArmConfig two_a = ik_to(model, env, {{0, 0}, {0, 0}, {3, 0}, {6, 0}, {8, 2}});
  const ArmConfig two_b = ik_to(model, env, {{0, 0}, {0, 0}, {0, 3}, {-2, 6}, {1, 8}});
  mask = reduce_dof(two_a, two_b);
  CHECK(mask == std::vector<bool>{true, true, false, false, false});

  // Start parks 1, goal parks 2: only the common prefix (1 joint) freezes.
  const ArmConfig three = ik_to(model, env, {{0, 0}, {3, 0}, {6, 0}, {9, 0}, {9, 3}});
  mask = reduce_dof(three, two_b);
  CHECK(mask == std::vector<bool>{true, false, false, false, false});
}

TEST_CASE("nonnegative-pitch endpoints always reach a retraction bridge") {
  // Heading-to-heading move across a wall: the straight interpolation sweeps
  // the link through the wall, but collapsing onto the vertical stack and
  // re-deploying always works, even with the iteration budget starved.
  Environment env = world(10.0);
  env.obstacles.push_back(rect(-1, 2, 1, 6));
  const ArmModel model = model_of(env, 1, 4.5);
  const ArmConfig start = ik_to(model, env, {{-3.0, 3.0}});
  const ArmConfig goal = ik_to(model, env, {{3.0, 3.0}});
  PlannerParams starved = quick_params(3, 2);
  starved.max_iters_per_attempt = 1;
  const ArmPath path = plan(model, start, goal, env, starved);
  CHECK(path.cost >= 2.0 * std::hypot(3.0, 3.0) - 1e-9);  // in and back out
}

TEST_CASE("exhausted attempts raise a planner timeout") {
  // A negative-pitch start raises through pitch 0, which extends the link
  // outward into a block sitting just beyond the leader: the retraction
  // bridge fails, the direct sweep crosses the wall, and one RRT iteration
  // cannot connect.
  Environment env = world(10.0);
  env.obstacles.push_back(rect(-1, 2, 1, 6));
  env.obstacles.push_back(rect(-3.45, 3.05, -3.05, 3.45));
  const ArmModel model = model_of(env, 1, 4.5);
  ArmConfig start = ik_to(model, env, {{-3.0, 3.0}});
  start[0].pitch = -start[0].pitch;  // same projection, negative z branch
  const ArmConfig goal = ik_to(model, env, {{3.0, 3.0}});
  REQUIRE(config_valid(model, start, env));
  REQUIRE(config_valid(model, goal, env));
  PlannerParams starved = quick_params(3, 2);
  starved.max_iters_per_attempt = 1;
  starved.max_batches = 2;
  CHECK_THROWS_AS(plan(model, start, goal, env, starved), PlannerTimeoutError);

  // With a real iteration budget the planner escapes via the long yaw arc.
  const ArmPath path = plan(model, start, goal, env, quick_params(3, 2));
  CHECK(path.cost > 0.0);
}

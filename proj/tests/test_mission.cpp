#include <doctest.h>

#include <cmath>

#include "backbone/errors.hpp"
#include "backbone/kinematics.hpp"
#include "backbone/mission.hpp"
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

PlannerParams quick_params(std::uint64_t seed = 5) {
  PlannerParams p;
  p.rng_seed = seed;
  p.max_attempts = 2;
  p.attempt_time_budget = 120.0;
  p.shortcut_iters = 60;
  p.max_iters_per_attempt = 8000;
  return p;
}

}  // namespace

TEST_CASE("single in-range goal: one clean leg with no relays") {
  Mission m;
  m.env = world();
  m.team = TeamSpec::homogeneous(2, 5.0, 0.5, 0.1);
  m.goals = {{3.0, 1.0}};
  m.params = quick_params();
  const MissionReport report = run_mission(m);
  REQUIRE(report.legs.size() == 1);
  CHECK(report.completed);
  CHECK(report.legs[0].status == LegStatus::Ok);
  CHECK(report.legs[0].used_relays == 0);
  CHECK(report.legs[0].connectivity.violations() == 0);
  CHECK(report.legs[0].baseline_time_s > 0.0);
}

TEST_CASE("legs chain: each start is the previous goal configuration") {
  Mission m;
  m.env = world();
  m.team = TeamSpec::homogeneous(3, 5.0, 0.5, 0.1);
  m.goals = {{6.0, 2.0}, {9.0, -3.0}, {2.0, -6.0}, {-5.0, 4.0}};
  m.params = quick_params(42);
  const MissionReport report = run_mission(m);
  REQUIRE(report.completed);
  for (std::size_t leg = 1; leg < report.legs.size(); ++leg) {
    const auto& prev_tr = report.legs[leg - 1].trajectories;
    const auto& cur_tr = report.legs[leg].trajectories;
    REQUIRE(prev_tr.robot_count() == cur_tr.robot_count());
    for (std::size_t r = 0; r < cur_tr.robot_count(); ++r) {
      CHECK(std::abs(cur_tr.positions.front()[r].x - prev_tr.positions.back()[r].x) <= 1e-9);
      CHECK(std::abs(cur_tr.positions.front()[r].y - prev_tr.positions.back()[r].y) <= 1e-9);
    }
    CHECK(report.legs[leg].connectivity.violations() == 0);
  }
  // Leaders end on their goals.
  for (const LegResult& leg : report.legs)
    CHECK(distance(leg.trajectories.positions.back().back(), leg.goal) <= 1e-9);
}

TEST_CASE("identical mission inputs reproduce identical outputs") {
  Mission m;
  m.env = world();
  m.team = TeamSpec::homogeneous(2, 5.0, 0.5, 0.1);
  m.goals = {{6.0, 2.0}, {-4.0, 5.0}};
  m.params = quick_params(99);
  const MissionReport a = run_mission(m);
  const MissionReport b = run_mission(m);
  REQUIRE(a.legs.size() == b.legs.size());
  for (std::size_t i = 0; i < a.legs.size(); ++i) {
    CHECK(a.legs[i].path_cost_m == b.legs[i].path_cost_m);
    CHECK(a.legs[i].exec_time_s == b.legs[i].exec_time_s);
    CHECK(a.legs[i].baseline_time_s == b.legs[i].baseline_time_s);
    REQUIRE(a.legs[i].trajectories.timestamps.size() == b.legs[i].trajectories.timestamps.size());
    for (std::size_t k = 0; k < a.legs[i].trajectories.timestamps.size(); ++k)
      for (std::size_t r = 0; r < a.legs[i].trajectories.robot_count(); ++r) {
        CHECK(a.legs[i].trajectories.positions[k][r].x == b.legs[i].trajectories.positions[k][r].x);
        CHECK(a.legs[i].trajectories.positions[k][r].y == b.legs[i].trajectories.positions[k][r].y);
      }
  }
}

TEST_CASE("a failing leg aborts the mission and is recorded") {
  Mission m;
  m.env = world();
  m.team = TeamSpec::homogeneous(1, 5.0, 0.5, 0.1);
  m.goals = {{3.0, 0.0}, {18.0, 0.0}, {2.0, 2.0}};  // second goal needs 3 relays
  m.params = quick_params();
  const MissionReport report = run_mission(m);
  REQUIRE(report.legs.size() == 3);
  CHECK(report.legs[0].status == LegStatus::Ok);
  CHECK(report.legs[1].status == LegStatus::InsufficientRobots);
  CHECK(report.legs[2].status == LegStatus::Skipped);
  CHECK_FALSE(report.completed);
  CHECK(report.legs_ok == 1);
}

TEST_CASE("goal sampling is deterministic, free and near-to-far ordered") {
  const Environment env = load_environment(std::string(BACKBONE_MAPS_DIR) + "/quantitative.env");
  const Environment dilated = dilate_obstacles(env, 0.3, 16);
  const auto goals_a = sample_mission_goals(dilated, 8, 4321);
  const auto goals_b = sample_mission_goals(dilated, 8, 4321);
  REQUIRE(goals_a.size() == 8);
  for (std::size_t i = 0; i < goals_a.size(); ++i) {
    CHECK(goals_a[i].x == goals_b[i].x);
    CHECK(goals_a[i].y == goals_b[i].y);
    CHECK(point_in_free_space(goals_a[i], dilated));
  }
  // Ordered by direct-at-least path length: straight-line distance to the
  // first goal cannot exceed the last goal's path length.
  CHECK(distance(goals_a.front(), dilated.base_station) <=
        distance(goals_a.back(), dilated.base_station) + 30.0);
}

TEST_CASE("bench on a trivial size completes and exports") {
  Mission seeded;
  const Environment env = world();
  const TeamSpec team = TeamSpec::homogeneous(2, 5.0, 0.5, 0.1);
  const std::vector<Vec2> goals = {{4.0, 1.0}, {7.0, -2.0}};
  const BenchReport bench =
      bench_team_sizes(env, {2}, goals, 2, team, quick_params(7), 0.5, 0.1);
  REQUIRE(bench.cells.size() == 2);
  for (const BenchCell& cell : bench.cells) {
    CHECK(cell.team_size == 2);
    CHECK(cell.report.completed);
  }
  const std::string csv = bench_report_to_csv(bench);
  CHECK(csv.rfind("team_size,trial,", 0) == 0);
  CHECK(csv.find("\n2,0,2,") != std::string::npos);

  const std::string mission_csv = mission_report_to_csv(bench.cells[0].report);
  CHECK(mission_csv.find("# legs_ok 2") != std::string::npos);
}

// Command-line front end: deploy / plan / mission / bench / render.
// Exit codes: 0 ok, 2 usage, 3 infeasible, 4 planner timeout, 5 I/O.

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "backbone/errors.hpp"
#include "backbone/io.hpp"
#include "backbone/kinematics.hpp"
#include "backbone/mission.hpp"
#include "backbone/plan.hpp"
#include "backbone/svg.hpp"
#include "backbone/traj.hpp"
#include "backbone/visgraph.hpp"

namespace {

using namespace backbone;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitInfeasible = 3;
constexpr int kExitTimeout = 4;
constexpr int kExitIo = 5;

struct CommonOpts {
  std::string env_path;
  int robots = 4;
  double radius = 5.0;
  double gap = 0.5;
  double robot_radius = 0.3;
  std::uint64_t seed = 1;
  double budget = 20.0;
  int attempts = 200;
  double vmax = 0.5;
  double dt = 0.1;
  int workers = 1;
  int iters = 20000;
};

TeamSpec make_team(const CommonOpts& opts) {
  return TeamSpec::homogeneous(opts.robots, opts.radius, opts.gap, opts.robot_radius);
}

PlannerParams make_params(const CommonOpts& opts) {
  PlannerParams params;
  params.attempt_time_budget = opts.budget;
  params.max_attempts = opts.attempts;
  params.rng_seed = opts.seed;
  params.workers = opts.workers;
  params.max_iters_per_attempt = opts.iters;
  return params;
}

Vec2 parse_xy(const std::string& text, const std::string& what) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) throw ParseError(what + ": expected 'x,y'");
  try {
    return {std::stod(text.substr(0, comma)), std::stod(text.substr(comma + 1))};
  } catch (const std::exception&) {
    throw ParseError(what + ": expected 'x,y'");
  }
}

void emit(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-")
    std::cout << content;
  else
    write_text_file(path, content);
}

std::string leg_file(const std::string& report_path, int leg, const char* kind) {
  std::filesystem::path p(report_path);
  const std::string stem = p.stem().string();
  char buf[32];
  std::snprintf(buf, sizeof(buf), "_leg%02d_%s.csv", leg, kind);
  return (p.parent_path() / (stem + buf)).string();
}

int run(int argc, char** argv) {
  CLI::App app{"Connectivity-preserving relay backbone planner"};
  app.require_subcommand(1);
  CommonOpts opts;

  auto add_common = [&opts](CLI::App* cmd, bool with_planner) {
    cmd->add_option("--env", opts.env_path, "environment file")->required();
    cmd->add_option("--robots", opts.robots, "relay count N");
    cmd->add_option("--radius", opts.radius, "communication radius (m)");
    cmd->add_option("--gap", opts.gap, "safety gap (m)");
    cmd->add_option("--robot-radius", opts.robot_radius, "obstacle dilation radius (m)");
    if (with_planner) {
      cmd->add_option("--seed", opts.seed, "planner RNG seed");
      cmd->add_option("--budget", opts.budget, "planning time window per batch (s)");
      cmd->add_option("--attempts", opts.attempts, "planner attempts per batch");
      cmd->add_option("--workers", opts.workers, "parallel planner workers");
      cmd->add_option("--iters", opts.iters, "RRT iteration cap per attempt");
      cmd->add_option("--vmax", opts.vmax, "robot speed limit (m/s)");
      cmd->add_option("--dt", opts.dt, "trajectory sample period (s)");
    }
  };

  // deploy
  auto* deploy_cmd = app.add_subcommand("deploy", "compute a backbone for one leader goal");
  std::string goal_text;
  std::string out_path, svg_path;
  add_common(deploy_cmd, false);
  deploy_cmd->add_option("--goal", goal_text, "leader goal 'x,y'")->required();
  deploy_cmd->add_option("--out", out_path, "output file (default stdout)");
  deploy_cmd->add_option("--svg", svg_path, "also render the result as SVG");

  // plan
  auto* plan_cmd = app.add_subcommand("plan", "plan between two backbone configurations");
  std::string from_path, to_path, traj_path;
  add_common(plan_cmd, true);
  plan_cmd->add_option("--from", from_path, "start backbone file")->required();
  plan_cmd->add_option("--to", to_path, "goal backbone file")->required();
  plan_cmd->add_option("--out", out_path, "arm path output file (default stdout)");
  plan_cmd->add_option("--traj", traj_path, "projected trajectory CSV output");
  plan_cmd->add_option("--svg", svg_path, "render trajectories as SVG");

  // mission
  auto* mission_cmd = app.add_subcommand("mission", "run sequential leader goals");
  std::string goals_path;
  add_common(mission_cmd, true);
  mission_cmd->add_option("--goals", goals_path, "goal list file (x y per line)")->required();
  mission_cmd->add_option("--out", out_path, "report CSV path (leg CSVs written alongside)")
      ->required();
  mission_cmd->add_option("--svg", svg_path, "render the mission as SVG");

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "team-size scaling benchmark");
  std::vector<int> sizes{2, 4, 6, 8, 10};
  int bench_goals = 10;
  int bench_trials = 4;
  add_common(bench_cmd, true);
  bench_cmd->add_option("--sizes", sizes, "team sizes to benchmark")->delimiter(',');
  bench_cmd->add_option("--goals", bench_goals, "number of sampled leader goals");
  bench_cmd->add_option("--trials", bench_trials, "trials per team size");
  bench_cmd->add_option("--out", out_path, "bench CSV path (default stdout)");
  bench_cmd->add_option("--svg", svg_path, "plot planning and mission time as SVG");

  // render
  auto* render_cmd = app.add_subcommand("render", "render a map with optional overlays");
  std::vector<std::string> backbone_paths, traj_paths;
  bool show_graph = false, show_dilated = false;
  render_cmd->add_option("--env", opts.env_path, "environment file")->required();
  render_cmd->add_option("--robot-radius", opts.robot_radius, "dilation radius for overlays");
  render_cmd->add_option("--backbone", backbone_paths, "backbone file(s) to overlay");
  render_cmd->add_option("--traj", traj_paths, "trajectory CSV file(s) to overlay");
  render_cmd->add_flag("--visgraph", show_graph, "overlay the visibility graph");
  render_cmd->add_flag("--dilated", show_dilated, "overlay dilated obstacle outlines");
  render_cmd->add_option("--out", out_path, "SVG output (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  const Environment env = load_environment(opts.env_path);

  if (deploy_cmd->parsed()) {
    const TeamSpec team = make_team(opts);
    const Environment dilated = dilate_obstacles(env, team.robot_radius);
    const BackboneConfig cfg = deploy_backbone(dilated, team, parse_xy(goal_text, "--goal"));
    emit(out_path, backbone_to_text(cfg));
    if (!svg_path.empty()) {
      RenderOptions render;
      render.dilated = &dilated;
      render.backbones.push_back(cfg);
      write_text_file(svg_path, render_svg(env, render));
    }
    return kExitOk;
  }

  if (plan_cmd->parsed()) {
    const BackboneConfig from = load_backbone(from_path);
    const BackboneConfig to = load_backbone(to_path);
    if (from.relay_positions.size() != to.relay_positions.size())
      throw ValidationError("plan: --from and --to relay counts differ");
    opts.robots = static_cast<int>(from.relay_positions.size());
    const TeamSpec team = make_team(opts);
    const Environment dilated = dilate_obstacles(env, team.robot_radius);
    const ArmModel model = make_arm_model(env.base_station, team);

    const ArmPath path = plan(model, inverse_kinematics(model, from),
                              inverse_kinematics(model, to), dilated, make_params(opts));
    std::ostringstream txt;
    txt << "cost: " << format_number(path.cost) << "\n";
    txt << "waypoints: [";
    for (std::size_t w = 0; w < path.waypoints.size(); ++w) {
      txt << (w == 0 ? "\n" : ",\n") << "  [";
      for (std::size_t j = 0; j < path.waypoints[w].size(); ++j) {
        if (j) txt << ", ";
        txt << "[" << format_number(path.waypoints[w][j].yaw) << ", "
            << format_number(path.waypoints[w][j].pitch) << "]";
      }
      txt << "]";
    }
    txt << "\n]\n";
    emit(out_path, txt.str());

    const RobotTrajectories tr =
        to_robot_trajectories(path, model, opts.vmax, opts.dt);
    if (!traj_path.empty()) write_text_file(traj_path, trajectories_to_csv(tr));
    if (!svg_path.empty()) {
      RenderOptions render;
      render.dilated = &dilated;
      render.backbones = {from, to};
      render.trajectories.push_back(tr);
      write_text_file(svg_path, render_svg(env, render));
    }
    return kExitOk;
  }

  if (mission_cmd->parsed()) {
    Mission mission;
    mission.env = env;
    mission.team = make_team(opts);
    mission.goals = load_goal_list(goals_path);
    mission.params = make_params(opts);
    mission.v_max = opts.vmax;
    mission.dt = opts.dt;
    const MissionReport report = run_mission(mission);
    write_text_file(out_path, mission_report_to_csv(report));
    for (const LegResult& leg : report.legs) {
      if (leg.status != LegStatus::Ok) continue;
      write_text_file(leg_file(out_path, leg.leg, "traj"), trajectories_to_csv(leg.trajectories));
      write_text_file(leg_file(out_path, leg.leg, "conn"), connectivity_to_csv(leg.connectivity));
    }
    if (!svg_path.empty()) {
      RenderOptions render;
      for (const LegResult& leg : report.legs) {
        if (leg.status != LegStatus::Ok) continue;
        render.backbones.push_back(leg.backbone);
        render.trajectories.push_back(leg.trajectories);
      }
      write_text_file(svg_path, render_svg(env, render));
    }
    for (const LegResult& leg : report.legs) {
      if (leg.status == LegStatus::PlannerTimeout) throw PlannerTimeoutError(leg.detail);
      if (leg.status != LegStatus::Ok && leg.status != LegStatus::Skipped)
        throw InfeasibleError("mission leg " + std::to_string(leg.leg) + ": " + leg.detail);
    }
    return kExitOk;
  }

  if (bench_cmd->parsed()) {
    const TeamSpec team = make_team(opts);
    const Environment dilated = dilate_obstacles(env, team.robot_radius);
    const std::vector<Vec2> goals = sample_mission_goals(dilated, bench_goals, opts.seed);
    const BenchReport report = bench_team_sizes(env, sizes, goals, bench_trials, team,
                                                make_params(opts), opts.vmax, opts.dt);
    emit(out_path, bench_report_to_csv(report));
    if (!svg_path.empty()) {
      std::vector<BenchPlotSeries> series;
      for (int size : sizes) {
        BenchPlotSeries s;
        s.team_size = size;
        std::vector<double> means;
        int cells = 0;
        for (const BenchCell& cell : report.cells) {
          if (cell.team_size != size) continue;
          ++cells;
          means.push_back(cell.report.mean_plan_time_s);
          s.mean_exec_time += cell.report.total_exec_time_s;
          s.mean_baseline_time += cell.report.total_baseline_time_s;
        }
        if (cells == 0) continue;
        for (double m : means) s.mean_plan_time += m / cells;
        for (double m : means)
          s.std_plan_time += (m - s.mean_plan_time) * (m - s.mean_plan_time);
        s.std_plan_time = cells > 1 ? std::sqrt(s.std_plan_time / (cells - 1)) : 0.0;
        s.mean_exec_time /= cells;
        s.mean_baseline_time /= cells;
        series.push_back(s);
      }
      write_text_file(svg_path, render_bench_plot(series));
    }
    return kExitOk;
  }

  // render
  RenderOptions render;
  Environment dilated;
  VisibilityGraph graph;
  if (show_graph || show_dilated) {
    dilated = dilate_obstacles(env, opts.robot_radius);
    render.dilated = &dilated;
    if (show_graph) {
      graph = build_visibility_graph(dilated, {});
      render.graph = &graph;
    }
  }
  for (const std::string& path : backbone_paths) render.backbones.push_back(load_backbone(path));
  for (const std::string& path : traj_paths) {
    // Recover robot polylines from a trajectory CSV: columns after t are x,y pairs.
    const std::string text = read_text_file(path);
    RobotTrajectories tr;
    std::istringstream in(text);
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      if (header) {
        header = false;
        continue;
      }
      std::vector<double> row;
      std::istringstream ls(line);
      std::string cell;
      while (std::getline(ls, cell, ',')) row.push_back(std::stod(cell));
      if (row.size() < 3 || row.size() % 2 == 0)
        throw ParseError(path + ": malformed trajectory row");
      tr.timestamps.push_back(row[0]);
      std::vector<Vec2> pos;
      for (std::size_t i = 1; i + 1 < row.size(); i += 2) pos.emplace_back(row[i], row[i + 1]);
      tr.positions.push_back(std::move(pos));
    }
    render.trajectories.push_back(std::move(tr));
  }
  emit(out_path, render_svg(env, render));
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const PlannerTimeoutError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitTimeout;
  } catch (const InfeasibleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInfeasible;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

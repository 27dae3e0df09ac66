#pragma once

#include <string>
#include <vector>

#include "backbone/deploy.hpp"
#include "backbone/environment.hpp"
#include "backbone/traj.hpp"
#include "backbone/visgraph.hpp"

namespace backbone {

struct RenderOptions {
  const Environment* dilated = nullptr;       // dilated outline overlay
  const VisibilityGraph* graph = nullptr;     // visibility edges layer
  std::vector<BackboneConfig> backbones;      // dashed chains
  std::vector<RobotTrajectories> trajectories;  // one polyline per robot
  double pixels_per_meter = 20.0;
};

/// Deterministic SVG: identical inputs produce identical bytes.
std::string render_svg(const Environment& env, const RenderOptions& opts);

struct BenchPlotSeries {
  int team_size = 0;
  double mean_plan_time = 0.0;  // seconds, mean over trials
  double std_plan_time = 0.0;
  double mean_exec_time = 0.0;      // simultaneous mission time (s)
  double mean_baseline_time = 0.0;  // over-the-backbone mission time (s)
};

/// Two-panel chart: planning time vs team size (with error whiskers) and
/// mission time, simultaneous vs sequential baseline.
std::string render_bench_plot(const std::vector<BenchPlotSeries>& series);

}  // namespace backbone

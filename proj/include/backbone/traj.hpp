#pragma once

#include <string>
#include <vector>

#include "backbone/deploy.hpp"
#include "backbone/environment.hpp"
#include "backbone/plan.hpp"

namespace backbone {

/// Synchronized timed samples: positions[k][r] is robot r (relays in chain
/// order, leader last) at timestamps[k].
struct RobotTrajectories {
  std::vector<double> timestamps;
  std::vector<std::vector<Vec2>> positions;

  std::size_t robot_count() const { return positions.empty() ? 0 : positions.front().size(); }
  double duration() const { return timestamps.empty() ? 0.0 : timestamps.back(); }
};

struct EdgeSample {
  double distance = 0.0;
  bool visible = false;
};

struct ConnectivityReport {
  std::vector<double> timestamps;
  std::vector<std::vector<EdgeSample>> samples;  // [time][chain edge]
  std::vector<double> max_distance;              // per chain edge
  int radius_violations = 0;
  int visibility_violations = 0;

  int violations() const { return radius_violations + visibility_violations; }
  bool pass() const { return violations() == 0; }
};

/// Densifies the arm path (per-joint step <= joint_step), projects every
/// sample, times each segment by its slowest robot at v_max, and resamples
/// all robots onto a shared uniform dt grid.
RobotTrajectories to_robot_trajectories(const ArmPath& path, const ArmModel& model, double v_max,
                                        double dt, double joint_step = 0.05);

/// Audits every chain edge at every timestamp against the link radius and
/// line-of-sight (Def. 4), counting violations.
ConnectivityReport validate_connectivity(const RobotTrajectories& tr, const Environment& env,
                                         const TeamSpec& team);

/// Sequential over-the-backbone relocation baseline: robots move one at a
/// time, retreating along the old chain polyline to its divergence point
/// with the new one, then advancing along the new polyline to their slot.
/// Returns the summed travel time. Throws InfeasibleError on invalid inputs.
double baseline_over_backbone(const BackboneConfig& start_cfg, const BackboneConfig& goal_cfg,
                              const Environment& dilated_env, const TeamSpec& team, double v_max);

std::string trajectories_to_csv(const RobotTrajectories& tr);
std::string connectivity_to_csv(const ConnectivityReport& report);

}  // namespace backbone

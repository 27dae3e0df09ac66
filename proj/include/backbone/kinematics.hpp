#pragma once

#include <vector>

#include "backbone/deploy.hpp"
#include "backbone/environment.hpp"

namespace backbone {

struct Vec3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
  Vec2 xy() const { return {x, y}; }
};

/// One universal joint: yaw accumulates along the chain, pitch is elevation
/// from the ground plane and does not propagate.
struct Joint {
  double yaw = 0.0;    // psi, (-pi, pi]
  double pitch = 0.0;  // theta, [-pi/2, pi/2]
};

using ArmConfig = std::vector<Joint>;

/// Virtual serial chain anchored over the base station at height 0. Link i
/// spans chain link i (comm radius minus safety gap), so a joint's planar
/// offset can never exceed the link's usable range.
struct ArmModel {
  Vec2 base;
  std::vector<double> link_lengths;

  std::size_t joint_count() const { return link_lengths.size(); }
  double height() const;  // sum of link lengths, the full-vertical arm height
};

ArmModel make_arm_model(const Vec2& base, const TeamSpec& team);

double wrap_angle(double a);  // into (-pi, pi]

bool config_within_limits(const ArmModel& model, const ArmConfig& cfg);

/// Joint positions p_1..p_J; p_i = p_{i-1} + L_i (cos t cos P, cos t sin P, sin t)
/// with P the accumulated yaw. The base anchor (base, 0) is not returned.
std::vector<Vec3> forward_kinematics(const ArmModel& model, const ArmConfig& cfg);

/// Drops z: joints 1..J-1 become relay positions, joint J the leader.
BackboneConfig project(const ArmModel& model, const std::vector<Vec3>& joints);

/// Vertical pose: every robot parked over the base.
ArmConfig parked_config(const ArmModel& model);

/// Closed-form inverse kinematics: per joint, in the previous joint's frame,
/// pitch = arccos(d / L) (positive z branch) and yaw = atan2(y, x); a zero
/// offset parks the joint vertically. Throws InfeasibleError when a chain
/// link is longer than its arm link (disconnected backbone).
ArmConfig inverse_kinematics(const ArmModel& model, const BackboneConfig& target);

}  // namespace backbone

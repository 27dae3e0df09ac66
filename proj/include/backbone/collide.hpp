#pragma once

#include "backbone/environment.hpp"
#include "backbone/kinematics.hpp"

namespace backbone {

/// Arm validity reduced to the ground plane: every projected joint in free
/// space and every projected link (base->joint1, ..., jointJ-1->jointJ)
/// passing line_of_sight. Equivalent to checking the 3D links against
/// infinitely extruded obstacle prisms.
bool config_valid(const ArmModel& model, const ArmConfig& cfg, const Environment& dilated_env);

/// Resolution-complete local planner: linear joint interpolation (yaw along
/// the shortest angular arc) sampled so no joint moves more than `step`
/// radians between checks, endpoints included.
bool segment_valid(const ArmModel& model, const ArmConfig& a, const ArmConfig& b,
                   const Environment& dilated_env, double step);

/// Interpolant used by segment_valid and the trajectory sampler.
ArmConfig interpolate_config(const ArmConfig& a, const ArmConfig& b, double t);

/// Largest per-joint angular difference (yaw wrapped) between two configs.
double max_joint_delta(const ArmConfig& a, const ArmConfig& b);

}  // namespace backbone

#include "backbone/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "backbone/errors.hpp"
#include "backbone/io.hpp"

namespace backbone {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kLimitSlack = 1e-9;
}  // namespace

double ArmModel::height() const {
  double h = 0.0;
  for (double l : link_lengths) h += l;
  return h;
}

ArmModel make_arm_model(const Vec2& base, const TeamSpec& team) {
  team.validate();
  ArmModel model;
  model.base = base;
  model.link_lengths.reserve(team.comm_radius.size());
  for (double r : team.comm_radius) model.link_lengths.push_back(r - team.safety_gap);
  return model;
}

double wrap_angle(double a) {
  a = std::fmod(a, 2.0 * kPi);
  if (a <= -kPi) a += 2.0 * kPi;
  if (a > kPi) a -= 2.0 * kPi;
  return a;
}

bool config_within_limits(const ArmModel& model, const ArmConfig& cfg) {
  if (cfg.size() != model.joint_count()) return false;
  for (const Joint& j : cfg) {
    if (std::abs(j.pitch) > kHalfPi + kLimitSlack) return false;
    if (j.yaw > kPi + kLimitSlack || j.yaw <= -kPi - kLimitSlack) return false;
  }
  return true;
}

std::vector<Vec3> forward_kinematics(const ArmModel& model, const ArmConfig& cfg) {
  if (cfg.size() != model.joint_count())
    throw ValidationError("forward_kinematics: config size does not match model");
  std::vector<Vec3> joints;
  joints.reserve(cfg.size());
  Vec3 p{model.base.x, model.base.y, 0.0};
  double heading = 0.0;
  for (std::size_t i = 0; i < cfg.size(); ++i) {
    heading += cfg[i].yaw;
    const double len = model.link_lengths[i];
    const double planar = len * std::cos(cfg[i].pitch);
    p.x += planar * std::cos(heading);
    p.y += planar * std::sin(heading);
    p.z += len * std::sin(cfg[i].pitch);
    joints.push_back(p);
  }
  return joints;
}

BackboneConfig project(const ArmModel& model, const std::vector<Vec3>& joints) {
  if (joints.size() != model.joint_count())
    throw ValidationError("project: joint count does not match model");
  BackboneConfig cfg;
  cfg.base = model.base;
  for (std::size_t i = 0; i + 1 < joints.size(); ++i)
    cfg.relay_positions.push_back(joints[i].xy());
  cfg.leader_position = joints.back().xy();
  int parked = 0;
  while (parked < static_cast<int>(cfg.relay_positions.size()) &&
         nearly_equal(cfg.relay_positions[static_cast<std::size_t>(parked)], cfg.base))
    ++parked;
  cfg.used_count = static_cast<int>(cfg.relay_positions.size()) - parked;
  return cfg;
}

ArmConfig parked_config(const ArmModel& model) {
  return ArmConfig(model.joint_count(), Joint{0.0, kHalfPi});
}

ArmConfig inverse_kinematics(const ArmModel& model, const BackboneConfig& target) {
  const std::vector<Vec2> chain = target.chain();
  if (chain.size() != model.joint_count() + 1)
    throw ValidationError("inverse_kinematics: backbone size does not match model");
  ArmConfig cfg;
  cfg.reserve(model.joint_count());
  Vec2 prev = chain.front();
  double heading = 0.0;
  for (std::size_t i = 1; i < chain.size(); ++i) {
    const double len = model.link_lengths[i - 1];
    const Vec2 local = rotated(chain[i] - prev, -heading);
    const double d = norm(local);
    Joint joint;
    if (d <= kGeomEps) {
      joint.yaw = 0.0;
      joint.pitch = kHalfPi;  // vertical link parks the robot over prev
    } else {
      if (d > len + 1e-9)
        throw InfeasibleError("inverse_kinematics: chain link " + std::to_string(i - 1) +
                              " spans " + format_number(d) + " m > link length " +
                              format_number(len) + " m (backbone disconnected)");
      joint.pitch = std::acos(std::min(d / len, 1.0));
      joint.yaw = std::atan2(local.y, local.x);
    }
    heading += joint.yaw;
    prev = chain[i];
    cfg.push_back(joint);
  }
  return cfg;
}

}  // namespace backbone

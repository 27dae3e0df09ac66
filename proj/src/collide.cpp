#include "backbone/collide.hpp"

#include <algorithm>
#include <cmath>

#include "backbone/errors.hpp"

namespace backbone {

bool config_valid(const ArmModel& model, const ArmConfig& cfg, const Environment& dilated_env) {
  if (!config_within_limits(model, cfg)) return false;
  const std::vector<Vec3> joints = forward_kinematics(model, cfg);
  Vec2 prev = model.base;
  for (const Vec3& joint : joints) {
    const Vec2 cur = joint.xy();
    if (!line_of_sight(prev, cur, dilated_env)) return false;
    prev = cur;
  }
  return true;
}

ArmConfig interpolate_config(const ArmConfig& a, const ArmConfig& b, double t) {
  ArmConfig out;
  out.reserve(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    Joint j;
    j.yaw = wrap_angle(a[i].yaw + t * wrap_angle(b[i].yaw - a[i].yaw));
    j.pitch = a[i].pitch + t * (b[i].pitch - a[i].pitch);
    out.push_back(j);
  }
  return out;
}

double max_joint_delta(const ArmConfig& a, const ArmConfig& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    worst = std::max(worst, std::abs(wrap_angle(b[i].yaw - a[i].yaw)));
    worst = std::max(worst, std::abs(b[i].pitch - a[i].pitch));
  }
  return worst;
}

bool segment_valid(const ArmModel& model, const ArmConfig& a, const ArmConfig& b,
                   const Environment& dilated_env, double step) {
  if (a.size() != b.size() || a.size() != model.joint_count())
    throw ValidationError("segment_valid: config sizes do not match model");
  if (step <= 0.0) throw ValidationError("segment_valid: step must be > 0");
  const int samples = std::max(1, static_cast<int>(std::ceil(max_joint_delta(a, b) / step)));
  for (int s = 0; s <= samples; ++s) {
    const double t = static_cast<double>(s) / samples;
    if (!config_valid(model, interpolate_config(a, b, t), dilated_env)) return false;
  }
  return true;
}

}  // namespace backbone

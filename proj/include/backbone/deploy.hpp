#pragma once

#include <vector>

#include "backbone/environment.hpp"

namespace backbone {

/// Chain-ordered robot positions. relay_positions[i] is robot i+1; robots
/// parked at the base form a contiguous prefix of the list.
struct BackboneConfig {
  Vec2 base;
  std::vector<Vec2> relay_positions;
  Vec2 leader_position;
  int used_count = 0;

  /// base, relays..., leader — the full chain, length n_relays + 2.
  std::vector<Vec2> chain() const;
  /// Chain with parked duplicates collapsed: base, deployed relays, leader.
  std::vector<Vec2> active_polyline() const;
};

struct BackbonePairCheck {
  int link = 0;          // chain link index, 0 = base->relay1
  double distance = 0.0; // planar meters
  double margin = 0.0;   // (c_r - gap) - distance
  bool visible = false;
  bool pass = false;
};

struct BackboneValidation {
  std::vector<BackbonePairCheck> pairs;
  bool pass = false;
};

/// Greedy relay placement along the taut visibility path from base to goal,
/// on an already-dilated environment. Throws InfeasibleError when the goal is
/// unreachable or the team has too few relays.
BackboneConfig deploy_backbone(const Environment& dilated_env, const TeamSpec& team,
                               const Vec2& leader_goal);

/// Per-link distance / radius-margin / visibility report over the full chain.
BackboneValidation validate_backbone(const BackboneConfig& cfg, const Environment& dilated_env,
                                     const TeamSpec& team);

}  // namespace backbone

#pragma once

#include <string>
#include <vector>

#include "backbone/geometry.hpp"

namespace backbone {

/// Planar workspace: bounding rectangle, CCW polygonal obstacles, base station.
struct Environment {
  Rect bounds;
  std::vector<Polygon> obstacles;
  Vec2 base_station;
};

/// Relay team parameters. comm_radius has n_relays + 1 entries: entry i is the
/// radius of chain link i (base->relay1 is link 0, relayN->leader is the last).
struct TeamSpec {
  int n_relays = 0;
  std::vector<double> comm_radius;
  double safety_gap = 0.5;
  double robot_radius = 0.3;

  static TeamSpec homogeneous(int n_relays, double radius, double gap, double robot_radius);
  /// Throws ValidationError on violated invariants (0 < gap < min radius, ...).
  void validate() const;
  double link_budget(int link) const { return comm_radius[static_cast<std::size_t>(link)] - safety_gap; }
};

/// Throws ValidationError when an invariant fails (offending polygon index in
/// the message); callers may mutate and re-check.
void validate_environment(const Environment& env);

Environment load_environment(const std::string& path);
std::string environment_to_text(const Environment& env);

/// Minkowski-dilates every obstacle with a circumscribed regular k-gon of the
/// given radius, merges overlaps, and shrinks the bounds inward by radius.
/// Throws InfeasibleError if the base station ends up outside free space.
Environment dilate_obstacles(const Environment& env, double radius, int k = 16);

/// True iff p is strictly inside the bounds and strictly outside every
/// obstacle (boundary contact counts as blocked).
bool point_in_free_space(const Vec2& p, const Environment& env);

/// Def.-4 visibility: both endpoints free and the segment clear of every
/// obstacle, with grazing boundary contact counting as blocked.
bool line_of_sight(const Vec2& p, const Vec2& q, const Environment& env);

}  // namespace backbone

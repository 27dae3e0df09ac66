#pragma once

#include <vector>

#include "backbone/environment.hpp"

namespace backbone {

/// Outward offset applied to obstacle corner nodes so graph edges clear the
/// conservative boundary-contact rule with real margin. Exceeds the 16-gon
/// corner-rounding sagitta, so taut chords between offset corners stay free
/// and a rounded corner costs roughly one path vertex instead of several.
constexpr double kVertexClearance = 0.08;

struct GraphEdge {
  int to = 0;
  double weight = 0.0;  // Euclidean meters
};

struct VisibilityGraph {
  std::vector<Vec2> nodes;
  std::vector<std::vector<GraphEdge>> adj;

  /// Index of the node equal to p within kGeomEps, or -1.
  int find_node(const Vec2& p) const;
};

/// Nodes are the convex dilated-obstacle corners (offset outward by
/// `clearance`, kept only in free space) plus the extra points; edges join
/// every mutually visible pair. Throws InfeasibleError if an extra point is
/// not in free space.
VisibilityGraph build_visibility_graph(const Environment& dilated_env,
                                       const std::vector<Vec2>& extra,
                                       double clearance = kVertexClearance);

/// Minimal-length node sequence from start to goal (both must be graph nodes,
/// e.g. inserted via `extra`). Ties broken by node index. Throws
/// InfeasibleError when no path exists.
std::vector<Vec2> shortest_path(const VisibilityGraph& g, const Vec2& start, const Vec2& goal);

}  // namespace backbone

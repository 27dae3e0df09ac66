#include "backbone/visgraph.hpp"

#include <algorithm>
#include <limits>
#include <queue>

#include "backbone/errors.hpp"
#include "backbone/io.hpp"

namespace backbone {

int VisibilityGraph::find_node(const Vec2& p) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nearly_equal(nodes[i], p)) return static_cast<int>(i);
  return -1;
}

VisibilityGraph build_visibility_graph(const Environment& dilated_env,
                                       const std::vector<Vec2>& extra, double clearance) {
  VisibilityGraph g;
  for (const Polygon& poly : dilated_env.obstacles) {
    const std::size_t n = poly.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& prev = poly[(i + n - 1) % n];
      const Vec2& cur = poly[i];
      const Vec2& next = poly[(i + 1) % n];
      if (orientation(prev, cur, next) <= 0) continue;  // reflex or straight: never on a taut path
      const Vec2 in_dir = normalized(cur - prev);
      const Vec2 out_dir = normalized(next - cur);
      const Vec2 miter = in_dir - out_dir;
      if (norm(miter) <= kGeomEps) continue;
      const Vec2 node = cur + normalized(miter) * clearance;
      if (point_in_free_space(node, dilated_env)) g.nodes.push_back(node);
    }
  }
  for (const Vec2& p : extra) {
    if (!point_in_free_space(p, dilated_env))
      throw InfeasibleError("visibility graph: point (" + format_number(p.x) + ", " +
                            format_number(p.y) + ") is not in free space");
    if (g.find_node(p) < 0) g.nodes.push_back(p);
  }

  const std::size_t n = g.nodes.size();
  g.adj.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!line_of_sight(g.nodes[i], g.nodes[j], dilated_env)) continue;
      const double w = distance(g.nodes[i], g.nodes[j]);
      g.adj[i].push_back({static_cast<int>(j), w});
      g.adj[j].push_back({static_cast<int>(i), w});
    }
  }
  return g;
}

std::vector<Vec2> shortest_path(const VisibilityGraph& g, const Vec2& start, const Vec2& goal) {
  const int s = g.find_node(start);
  const int t = g.find_node(goal);
  if (s < 0 || t < 0)
    throw ValidationError("shortest_path: start and goal must be graph nodes");
  if (s == t) return {g.nodes[static_cast<std::size_t>(s)]};

  const std::size_t n = g.nodes.size();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(n, kInf);
  std::vector<int> parent(n, -1);
  // (distance, node index): index order is the deterministic tie-break.
  using Entry = std::pair<double, int>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> heap;
  dist[static_cast<std::size_t>(s)] = 0.0;
  heap.emplace(0.0, s);
  while (!heap.empty()) {
    const auto [d, u] = heap.top();
    heap.pop();
    if (d > dist[static_cast<std::size_t>(u)]) continue;
    if (u == t) break;
    for (const GraphEdge& e : g.adj[static_cast<std::size_t>(u)]) {
      const double cand = d + e.weight;
      if (cand < dist[static_cast<std::size_t>(e.to)]) {
        dist[static_cast<std::size_t>(e.to)] = cand;
        parent[static_cast<std::size_t>(e.to)] = u;
        heap.emplace(cand, e.to);
      }
    }
  }
  if (dist[static_cast<std::size_t>(t)] == kInf)
    throw InfeasibleError("shortest_path: start and goal are in disconnected free-space components");

  std::vector<Vec2> path;
  for (int v = t; v != -1; v = parent[static_cast<std::size_t>(v)])
    path.push_back(g.nodes[static_cast<std::size_t>(v)]);
  std::reverse(path.begin(), path.end());
  return path;
}

}  // namespace backbone

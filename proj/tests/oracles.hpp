// Test-only oracles, written independently of the library code paths they
// check: different algorithms on purpose (winding numbers instead of parity,
// parametric closest points instead of projection clamping, flat-array
// Dijkstra instead of the heap version).
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "backbone/environment.hpp"
#include "backbone/geometry.hpp"
#include "backbone/visgraph.hpp"

namespace oracle {

using backbone::Environment;
using backbone::Polygon;
using backbone::Vec2;
using backbone::VisibilityGraph;

// Deterministic test RNG (xorshift128+ style, platform independent).
struct Rng {
  std::uint64_t s0, s1;

  explicit Rng(std::uint64_t seed) : s0(seed ^ 0x8000000080002025ULL), s1(seed * 6364136223846793005ULL + 1) {
    next();
    next();
  }

  std::uint64_t next() {
    std::uint64_t x = s0;
    const std::uint64_t y = s1;
    s0 = y;
    x ^= x << 23;
    s1 = x ^ y ^ (x >> 17) ^ (y >> 26);
    return s1 + y;
  }

  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + uniform() * (hi - lo); }
  int index(int n) { return static_cast<int>(next() % static_cast<std::uint64_t>(n)); }
};

inline double closest_param(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 d = b - a;
  const double len2 = backbone::dot(d, d);
  if (len2 == 0.0) return 0.0;
  return std::clamp(backbone::dot(p - a, d) / len2, 0.0, 1.0);
}

// Minimum distance between two segments via candidate parameters, including
// the interior crossing solved from the 2x2 linear system.
inline double seg_seg_distance(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const Vec2 u = b - a, v = d - c, w = a - c;
  const double denom = backbone::cross(u, v);
  if (std::abs(denom) > 1e-15) {
    const double s = backbone::cross(v, w) / denom;
    const double t = backbone::cross(u, w) / denom;
    if (s >= 0.0 && s <= 1.0 && t >= 0.0 && t <= 1.0) return 0.0;
  }
  double best = std::numeric_limits<double>::infinity();
  for (const auto& [p, sa, sb] : {std::tuple{a, c, d}, std::tuple{b, c, d}}) {
    const double t = closest_param(p, sa, sb);
    best = std::min(best, backbone::distance(p, sa + (sb - sa) * t));
  }
  for (const auto& [p, sa, sb] : {std::tuple{c, a, b}, std::tuple{d, a, b}}) {
    const double t = closest_param(p, sa, sb);
    best = std::min(best, backbone::distance(p, sa + (sb - sa) * t));
  }
  return best;
}

// Winding-number point in polygon (nonzero rule); boundary handled by the
// caller via distance checks.
inline bool winding_inside(const Polygon& poly, const Vec2& p) {
  double angle = 0.0;
  const std::size_t n = poly.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 u = poly[i] - p;
    const Vec2 v = poly[(i + 1) % n] - p;
    angle += std::atan2(backbone::cross(u, v), backbone::dot(u, v));
  }
  return std::abs(angle) > 3.0;  // ~2*pi for inside, ~0 for outside
}

inline double point_poly_distance(const Polygon& poly, const Vec2& p) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < poly.size(); ++i)
    best = std::min(best, [&] {
      const Vec2& a = poly[i];
      const Vec2& b = poly[(i + 1) % poly.size()];
      const double t = closest_param(p, a, b);
      return backbone::distance(p, a + (b - a) * t);
    }());
  return best;
}

inline bool free_point(const Vec2& p, const Environment& env) {
  if (p.x <= env.bounds.min.x + backbone::kGeomEps || p.x >= env.bounds.max.x - backbone::kGeomEps ||
      p.y <= env.bounds.min.y + backbone::kGeomEps || p.y >= env.bounds.max.y - backbone::kGeomEps)
    return false;
  for (const Polygon& poly : env.obstacles) {
    if (point_poly_distance(poly, p) <= backbone::kGeomEps) return false;
    if (winding_inside(poly, p)) return false;
  }
  return true;
}

inline bool line_of_sight(const Vec2& p, const Vec2& q, const Environment& env) {
  if (!free_point(p, env) || !free_point(q, env)) return false;
  if (backbone::distance(p, q) <= backbone::kGeomEps) return true;
  for (const Polygon& poly : env.obstacles) {
    for (std::size_t i = 0; i < poly.size(); ++i) {
      if (seg_seg_distance(p, q, poly[i], poly[(i + 1) % poly.size()]) <= backbone::kGeomEps)
        return false;
    }
    if (winding_inside(poly, (p + q) / 2.0)) return false;
  }
  return true;
}

// Flat O(V^2) Dijkstra; returns the node index sequence (empty = no path).
inline std::vector<int> dijkstra(const VisibilityGraph& g, int s, int t) {
  const std::size_t n = g.nodes.size();
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  std::vector<int> parent(n, -1);
  std::vector<bool> done(n, false);
  dist[static_cast<std::size_t>(s)] = 0.0;
  for (std::size_t round = 0; round < n; ++round) {
    int u = -1;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
      if (!done[i] && dist[i] < best) {
        best = dist[i];
        u = static_cast<int>(i);
      }
    }
    if (u < 0) break;
    done[static_cast<std::size_t>(u)] = true;
    for (const backbone::GraphEdge& e : g.adj[static_cast<std::size_t>(u)]) {
      const double cand = dist[static_cast<std::size_t>(u)] + e.weight;
      if (cand < dist[static_cast<std::size_t>(e.to)]) {
        dist[static_cast<std::size_t>(e.to)] = cand;
        parent[static_cast<std::size_t>(e.to)] = u;
      }
    }
  }
  if (!std::isfinite(dist[static_cast<std::size_t>(t)])) return {};
  std::vector<int> path;
  for (int v = t; v != -1; v = parent[static_cast<std::size_t>(v)]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

inline double polyline_length(const std::vector<Vec2>& pts) {
  double acc = 0.0;
  for (std::size_t i = 1; i < pts.size(); ++i) acc += backbone::distance(pts[i - 1], pts[i]);
  return acc;
}

// Minkowski sum of two convex polygons: convex hull of pairwise vertex sums.
inline Polygon convex_minkowski(const Polygon& a, const std::vector<Vec2>& b) {
  std::vector<Vec2> sums;
  sums.reserve(a.size() * b.size());
  for (const Vec2& pa : a.pts)
    for (const Vec2& pb : b) sums.push_back(pa + pb);
  Polygon out;
  out.pts = backbone::convex_hull(std::move(sums));
  return out;
}

inline double shoelace(const std::vector<Vec2>& ring) {
  double acc = 0.0;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i)
    acc += backbone::cross(ring[i], ring[(i + 1) % n]);
  return std::abs(acc) * 0.5;
}

// Random workspace with up to max_obstacles rectangles, base kept clear.
inline Environment random_env(Rng& rng, int max_obstacles, double extent = 15.0,
                              double min_side = 1.5, double max_side = 5.0) {
  Environment env;
  env.bounds.min = {-extent, -extent};
  env.bounds.max = {extent, extent};
  env.base_station = {rng.uniform(-extent * 0.5, extent * 0.5),
                      rng.uniform(-extent * 0.5, extent * 0.5)};
  const int count = rng.index(max_obstacles + 1);
  int guard = 0;
  while (static_cast<int>(env.obstacles.size()) < count && guard++ < 200) {
    const double w = rng.uniform(min_side, max_side);
    const double h = rng.uniform(min_side, max_side);
    const double cx = rng.uniform(env.bounds.min.x + w, env.bounds.max.x - w);
    const double cy = rng.uniform(env.bounds.min.y + h, env.bounds.max.y - h);
    Polygon rect;
    rect.pts = {{cx - w / 2, cy - h / 2},
                {cx + w / 2, cy - h / 2},
                {cx + w / 2, cy + h / 2},
                {cx - w / 2, cy + h / 2}};
    if (point_poly_distance(rect, env.base_station) < 1.0 ||
        winding_inside(rect, env.base_station))
      continue;
    env.obstacles.push_back(std::move(rect));
  }
  return env;
}

inline Vec2 random_free_point(Rng& rng, const Environment& env) {
  for (int guard = 0; guard < 100000; ++guard) {
    const Vec2 p{rng.uniform(env.bounds.min.x, env.bounds.max.x),
                 rng.uniform(env.bounds.min.y, env.bounds.max.y)};
    if (backbone::point_in_free_space(p, env)) return p;
  }
  return env.base_station;
}

}  // namespace oracle

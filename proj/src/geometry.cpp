#include "backbone/geometry.hpp"

#include <algorithm>

namespace backbone {

int orientation(const Vec2& a, const Vec2& b, const Vec2& c) {
  const double v = cross(b - a, c - a);
  if (v > kGeomEps) return 1;
  if (v < -kGeomEps) return -1;
  return 0;
}

double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b) {
  const Vec2 ab = b - a;
  const double len2 = dot(ab, ab);
  if (len2 <= 0.0) return distance(p, a);
  double t = dot(p - a, ab) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + ab * t);
}

namespace {

bool proper_crossing(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  const int o1 = orientation(a, b, c);
  const int o2 = orientation(a, b, d);
  const int o3 = orientation(c, d, a);
  const int o4 = orientation(c, d, b);
  return o1 != 0 && o2 != 0 && o3 != 0 && o4 != 0 && o1 != o2 && o3 != o4;
}

}  // namespace

double dist_segment_segment(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  if (proper_crossing(a, b, c, d)) return 0.0;
  return std::min(std::min(dist_point_segment(c, a, b), dist_point_segment(d, a, b)),
                  std::min(dist_point_segment(a, c, d), dist_point_segment(b, c, d)));
}

bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d) {
  return dist_segment_segment(a, b, c, d) <= kGeomEps;
}

double Polygon::signed_area() const {
  double acc = 0.0;
  for (std::size_t i = 0, n = pts.size(); i < n; ++i) {
    const Vec2& p = pts[i];
    const Vec2& q = pts[(i + 1) % n];
    acc += cross(p, q);
  }
  return 0.5 * acc;
}

double Polygon::perimeter() const {
  double acc = 0.0;
  for (std::size_t i = 0, n = pts.size(); i < n; ++i)
    acc += distance(pts[i], pts[(i + 1) % n]);
  return acc;
}

Rect Polygon::bbox() const {
  Rect r{pts.front(), pts.front()};
  for (const Vec2& p : pts) {
    r.min.x = std::min(r.min.x, p.x);
    r.min.y = std::min(r.min.y, p.y);
    r.max.x = std::max(r.max.x, p.x);
    r.max.y = std::max(r.max.y, p.y);
  }
  return r;
}

bool Polygon::is_simple() const {
  const std::size_t n = pts.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    if (nearly_equal(pts[i], pts[(i + 1) % n])) return false;  // degenerate edge
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& a = pts[i];
    const Vec2& b = pts[(i + 1) % n];
    for (std::size_t j = i + 1; j < n; ++j) {
      const Vec2& c = pts[j];
      const Vec2& d = pts[(j + 1) % n];
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) {
        // Shared endpoint is fine; anything more means a fold-back.
        const Vec2& shared = (j == i + 1) ? b : a;
        const Vec2& tip1 = (j == i + 1) ? a : b;
        const Vec2& tip2 = (j == i + 1) ? d : c;
        if (orientation(tip1, shared, tip2) == 0 && dot(tip1 - shared, tip2 - shared) > kGeomEps)
          return false;
        continue;
      }
      if (segments_intersect(a, b, c, d)) return false;
    }
  }
  return true;
}

PointSide polygon_side(const Polygon& poly, const Vec2& p) {
  const std::size_t n = poly.pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (dist_point_segment(p, poly.pts[i], poly.pts[(i + 1) % n]) <= kGeomEps)
      return PointSide::Boundary;
  }
  // p is at least kGeomEps off every edge, so the parity walk is stable.
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Vec2& a = poly.pts[i];
    const Vec2& b = poly.pts[j];
    if ((a.y > p.y) != (b.y > p.y)) {
      const double x_at = (b.x - a.x) * (p.y - a.y) / (b.y - a.y) + a.x;
      if (p.x < x_at) inside = !inside;
    }
  }
  return inside ? PointSide::Inside : PointSide::Outside;
}

bool segment_hits_polygon(const Vec2& a, const Vec2& b, const Polygon& poly) {
  const std::size_t n = poly.pts.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (segments_intersect(a, b, poly.pts[i], poly.pts[(i + 1) % n])) return true;
  }
  // No boundary contact: the segment is entirely inside or entirely outside.
  return polygon_side(poly, (a + b) / 2.0) != PointSide::Outside;
}

std::vector<Vec2> convex_hull(std::vector<Vec2> points) {
  std::sort(points.begin(), points.end(), [](const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  points.erase(std::unique(points.begin(), points.end(),
                           [](const Vec2& a, const Vec2& b) { return nearly_equal(a, b); }),
               points.end());
  const std::size_t n = points.size();
  if (n < 3) return points;
  std::vector<Vec2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = points[i];
  }
  for (std::size_t i = n - 1, t = k + 1; i-- > 0;) {
    while (k >= t && cross(hull[k - 1] - hull[k - 2], points[i] - hull[k - 2]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  return hull;
}

void simplify_ring(std::vector<Vec2>& ring, double eps) {
  if (ring.size() > 1 && nearly_equal(ring.front(), ring.back(), eps)) ring.pop_back();
  std::vector<Vec2> out;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2& prev = ring[(i + n - 1) % n];
    const Vec2& cur = ring[i];
    const Vec2& next = ring[(i + 1) % n];
    if (nearly_equal(cur, next, eps)) continue;
    if (std::abs(cross(cur - prev, next - cur)) <= eps && dot(cur - prev, next - cur) > 0.0)
      continue;  // interior point of a straight run
    out.push_back(cur);
  }
  ring = std::move(out);
}

}  // namespace backbone

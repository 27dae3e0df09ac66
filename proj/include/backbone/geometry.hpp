#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace backbone {

// Shared tolerance for point equality, orientation and contact tests (meters).
constexpr double kGeomEps = 1e-9;

struct Vec2 {
  double x = 0.0;
  double y = 0.0;

  Vec2() = default;
  Vec2(double x_, double y_) : x(x_), y(y_) {}

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  Vec2 operator/(double s) const { return {x / s, y / s}; }
  Vec2& operator+=(const Vec2& o) {
    x += o.x;
    y += o.y;
    return *this;
  }
};

inline double dot(const Vec2& a, const Vec2& b) { return a.x * b.x + a.y * b.y; }
inline double cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }
inline double norm(const Vec2& a) { return std::hypot(a.x, a.y); }
inline double distance(const Vec2& a, const Vec2& b) { return norm(a - b); }
inline Vec2 normalized(const Vec2& a) {
  const double n = norm(a);
  return n > 0.0 ? a / n : Vec2{0.0, 0.0};
}
inline Vec2 rotated(const Vec2& a, double angle) {
  const double c = std::cos(angle), s = std::sin(angle);
  return {c * a.x - s * a.y, s * a.x + c * a.y};
}
inline bool nearly_equal(const Vec2& a, const Vec2& b, double eps = kGeomEps) {
  return std::abs(a.x - b.x) <= eps && std::abs(a.y - b.y) <= eps;
}

/// Sign of the turn a->b->c: +1 left, -1 right, 0 collinear within kGeomEps.
int orientation(const Vec2& a, const Vec2& b, const Vec2& c);

double dist_point_segment(const Vec2& p, const Vec2& a, const Vec2& b);
double dist_segment_segment(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

/// Conservative segment intersection: proper crossings and any contact within
/// kGeomEps (touching endpoints, collinear overlap, grazing) count as hits.
bool segments_intersect(const Vec2& a, const Vec2& b, const Vec2& c, const Vec2& d);

struct Rect {
  Vec2 min;
  Vec2 max;

  double width() const { return max.x - min.x; }
  double height() const { return max.y - min.y; }
  bool valid() const { return max.x - min.x > kGeomEps && max.y - min.y > kGeomEps; }
  // Strict interior test; the border counts as outside (conservative).
  bool contains(const Vec2& p) const {
    return p.x > min.x + kGeomEps && p.x < max.x - kGeomEps && p.y > min.y + kGeomEps &&
           p.y < max.y - kGeomEps;
  }
};

enum class PointSide { Outside, Boundary, Inside };

struct Polygon {
  std::vector<Vec2> pts;  // counter-clockwise, not closed (last != first)

  std::size_t size() const { return pts.size(); }
  const Vec2& operator[](std::size_t i) const { return pts[i]; }

  double signed_area() const;
  double area() const { return std::abs(signed_area()); }
  double perimeter() const;
  bool is_ccw() const { return signed_area() > 0.0; }
  Rect bbox() const;
  /// Simple = no two non-adjacent edges touch, no adjacent edges fold back.
  bool is_simple() const;
};

/// Boundary when p is within kGeomEps of an edge, else even-odd classification.
PointSide polygon_side(const Polygon& poly, const Vec2& p);

/// True if segment ab touches the closed polygon region (boundary contact counts).
bool segment_hits_polygon(const Vec2& a, const Vec2& b, const Polygon& poly);

/// Andrew monotone chain; returns CCW hull without repeated endpoint.
std::vector<Vec2> convex_hull(std::vector<Vec2> points);

/// Drops consecutive duplicates and collinear interior vertices.
void simplify_ring(std::vector<Vec2>& ring, double eps = 1e-9);

}  // namespace backbone

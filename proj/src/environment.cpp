#include "backbone/environment.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/geometry.hpp>
#include <boost/geometry/geometries/point_xy.hpp>
#include <boost/geometry/geometries/polygon.hpp>

#include "backbone/errors.hpp"
#include "backbone/io.hpp"

namespace bg = boost::geometry;

namespace backbone {

namespace {

using BoostPoint = bg::model::d2::point_xy<double>;
using BoostPolygon = bg::model::polygon<BoostPoint, /*ClockWise=*/false>;
using BoostMulti = bg::model::multi_polygon<BoostPolygon>;

BoostPolygon to_boost(const std::vector<Vec2>& ring) {
  BoostPolygon poly;
  for (const Vec2& p : ring) bg::append(poly.outer(), BoostPoint(p.x, p.y));
  bg::correct(poly);
  return poly;
}

/// Circumscribed regular k-gon around a disk of the given radius; one edge
/// normal points along +x so axis-aligned support equals the radius exactly.
std::vector<Vec2> disk_kgon(double radius, int k) {
  const double circum = radius / std::cos(std::numbers::pi / k);
  std::vector<Vec2> pts;
  pts.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const double ang = (2.0 * j + 1.0) * std::numbers::pi / k;
    pts.emplace_back(circum * std::cos(ang), circum * std::sin(ang));
  }
  return pts;
}

}  // namespace

TeamSpec TeamSpec::homogeneous(int n_relays, double radius, double gap, double robot_radius) {
  TeamSpec team;
  team.n_relays = n_relays;
  team.comm_radius.assign(static_cast<std::size_t>(n_relays) + 1, radius);
  team.safety_gap = gap;
  team.robot_radius = robot_radius;
  return team;
}

void TeamSpec::validate() const {
  if (n_relays < 0) throw ValidationError("team: n_relays must be >= 0");
  if (comm_radius.size() != static_cast<std::size_t>(n_relays) + 1)
    throw ValidationError("team: comm_radius must have n_relays + 1 entries");
  double min_radius = comm_radius.empty() ? 0.0 : comm_radius.front();
  for (double r : comm_radius) {
    if (r <= 0.0) throw ValidationError("team: all communication radii must be > 0");
    min_radius = std::min(min_radius, r);
  }
  if (safety_gap <= 0.0 || safety_gap >= min_radius)
    throw ValidationError("team: safety gap must satisfy 0 < gap < min radius");
  if (robot_radius < 0.0) throw ValidationError("team: robot radius must be >= 0");
}

void validate_environment(const Environment& env) {
  if (!env.bounds.valid()) throw ValidationError("environment: bounds rectangle is empty");
  for (std::size_t i = 0; i < env.obstacles.size(); ++i) {
    const Polygon& poly = env.obstacles[i];
    if (poly.size() < 3)
      throw ValidationError("environment: obstacle " + std::to_string(i) +
                            " has fewer than 3 vertices");
    if (!poly.is_simple())
      throw ValidationError("environment: obstacle " + std::to_string(i) +
                            " is not a simple polygon");
    if (!poly.is_ccw())
      throw ValidationError("environment: obstacle " + std::to_string(i) +
                            " is not counter-clockwise");
  }
  if (!point_in_free_space(env.base_station, env))
    throw ValidationError("environment: base station is not in free space");
}

bool point_in_free_space(const Vec2& p, const Environment& env) {
  if (!env.bounds.contains(p)) return false;
  for (const Polygon& poly : env.obstacles) {
    const Rect bb = poly.bbox();
    if (p.x < bb.min.x - kGeomEps || p.x > bb.max.x + kGeomEps || p.y < bb.min.y - kGeomEps ||
        p.y > bb.max.y + kGeomEps)
      continue;
    if (polygon_side(poly, p) != PointSide::Outside) return false;
  }
  return true;
}

bool line_of_sight(const Vec2& p, const Vec2& q, const Environment& env) {
  if (!point_in_free_space(p, env) || !point_in_free_space(q, env)) return false;
  if (nearly_equal(p, q)) return true;
  const double lo_x = std::min(p.x, q.x), hi_x = std::max(p.x, q.x);
  const double lo_y = std::min(p.y, q.y), hi_y = std::max(p.y, q.y);
  for (const Polygon& poly : env.obstacles) {
    const Rect bb = poly.bbox();
    if (hi_x < bb.min.x - kGeomEps || lo_x > bb.max.x + kGeomEps || hi_y < bb.min.y - kGeomEps ||
        lo_y > bb.max.y + kGeomEps)
      continue;
    if (segment_hits_polygon(p, q, poly)) return false;
  }
  return true;
}

Environment dilate_obstacles(const Environment& env, double radius, int k) {
  if (radius < 0.0) throw ValidationError("dilate: radius must be >= 0");
  if (k < 8) throw ValidationError("dilate: disk approximation needs k >= 8");
  if (radius == 0.0) return env;

  const std::vector<Vec2> disk = disk_kgon(radius, k);

  BoostMulti merged;
  for (const Polygon& obstacle : env.obstacles) {
    // Minkowski sum with a convex k-gon: the polygon itself plus the convex
    // hull of each edge swept by the k-gon.
    BoostMulti pieces;
    BoostMulti tmp;
    bg::union_(pieces, to_boost(obstacle.pts), tmp);
    pieces = std::move(tmp);
    const std::size_t n = obstacle.size();
    for (std::size_t i = 0; i < n; ++i) {
      const Vec2& a = obstacle[i];
      const Vec2& b = obstacle[(i + 1) % n];
      std::vector<Vec2> swept;
      swept.reserve(2 * disk.size());
      for (const Vec2& d : disk) {
        swept.push_back(a + d);
        swept.push_back(b + d);
      }
      BoostMulti next;
      bg::union_(pieces, to_boost(convex_hull(std::move(swept))), next);
      pieces = std::move(next);
    }
    BoostMulti next;
    bg::union_(merged, pieces, next);
    merged = std::move(next);
  }

  Environment out;
  out.base_station = env.base_station;
  out.bounds.min = env.bounds.min + Vec2{radius, radius};
  out.bounds.max = env.bounds.max - Vec2{radius, radius};
  if (!out.bounds.valid())
    throw InfeasibleError("dilate: bounds collapse at radius " + format_number(radius));

  for (const BoostPolygon& poly : merged) {
    // Inner rings (free pockets fully enclosed by dilated obstacles) are
    // dropped, i.e. the pocket stays blocked. Conservative.
    Polygon ring;
    for (const BoostPoint& p : poly.outer()) ring.pts.emplace_back(bg::get<0>(p), bg::get<1>(p));
    simplify_ring(ring.pts);
    if (!ring.is_ccw()) std::reverse(ring.pts.begin(), ring.pts.end());
    if (ring.size() >= 3) out.obstacles.push_back(std::move(ring));
  }

  if (!point_in_free_space(env.base_station, out))
    throw InfeasibleError("dilate: dilation swallows the base station");
  return out;
}

}  // namespace backbone

#include "ltlplan/model/region.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ltlplan::model {

namespace {

double cross(Point o, Point a, Point b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

}  // namespace

Region Region::from_vertices(std::string name, std::vector<Point> vertices) {
  const int n = static_cast<int>(vertices.size());
  if (n < 3) throw RegionError("region '" + name + "': needs at least 3 vertices");
  for (const auto& v : vertices) {
    if (!std::isfinite(v.x) || !std::isfinite(v.y)) {
      throw RegionError("region '" + name + "': vertex coordinates must be finite");
    }
  }
  double area2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % n];
    area2 += a.x * b.y - b.x * a.y;
  }
  if (area2 <= 1e-12) {
    throw RegionError("region '" + name +
                      "': vertices must be counterclockwise with positive area");
  }
  for (int i = 0; i < n; ++i) {
    if (cross(vertices[i], vertices[(i + 1) % n], vertices[(i + 2) % n]) <= 1e-12) {
      throw RegionError("region '" + name + "': polygon is not strictly convex at vertex " +
                        std::to_string((i + 1) % n));
    }
  }
  Region r;
  r.name_ = std::move(name);
  for (int i = 0; i < n; ++i) {
    const Point& a = vertices[i];
    const Point& b = vertices[(i + 1) % n];
    double dx = b.x - a.x;
    double dy = b.y - a.y;
    double len = std::hypot(dx, dy);
    HalfPlane h{dy / len, -dx / len, 0.0};
    h.b = h.ax * a.x + h.ay * a.y;
    r.rows_.push_back(h);
  }
  r.vertices_ = std::move(vertices);
  return r;
}

Region Region::from_halfplanes(std::string name, std::vector<HalfPlane> rows) {
  if (rows.size() < 3) throw RegionError("region '" + name + "': needs at least 3 half-planes");
  for (auto& h : rows) {
    double len = std::hypot(h.ax, h.ay);
    if (!(len > 0) || !std::isfinite(h.b)) {
      throw RegionError("region '" + name + "': half-plane with zero normal or non-finite offset");
    }
    h.ax /= len;
    h.ay /= len;
    h.b /= len;
  }
  // Vertex enumeration: pairwise line intersections that satisfy all rows.
  std::vector<Point> pts;
  const int m = static_cast<int>(rows.size());
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      double det = rows[i].ax * rows[j].ay - rows[i].ay * rows[j].ax;
      if (std::abs(det) < 1e-12) continue;
      Point p{(rows[i].b * rows[j].ay - rows[i].ay * rows[j].b) / det,
              (rows[i].ax * rows[j].b - rows[i].b * rows[j].ax) / det};
      bool ok = std::all_of(rows.begin(), rows.end(), [&](const HalfPlane& h) {
        return h.ax * p.x + h.ay * p.y <= h.b + 1e-9;
      });
      if (ok) pts.push_back(p);
    }
  }
  if (pts.size() < 3) throw RegionError("region '" + name + "': empty or degenerate intersection");
  // Unboundedness: some direction d with a.d <= 0 for all rows.
  for (int i = 0; i < m; ++i) {
    for (double sgn : {1.0, -1.0}) {
      Point d{-rows[i].ay * sgn, rows[i].ax * sgn};
      bool recedes = std::all_of(rows.begin(), rows.end(), [&](const HalfPlane& h) {
        return h.ax * d.x + h.ay * d.y <= 1e-12;
      });
      if (recedes) throw RegionError("region '" + name + "': intersection is unbounded");
    }
  }
  Point c{0, 0};
  for (const auto& p : pts) {
    c.x += p.x / static_cast<double>(pts.size());
    c.y += p.y / static_cast<double>(pts.size());
  }
  std::sort(pts.begin(), pts.end(), [&](Point a, Point b) {
    return std::atan2(a.y - c.y, a.x - c.x) < std::atan2(b.y - c.y, b.x - c.x);
  });
  std::vector<Point> hull;
  for (const auto& p : pts) {
    if (!hull.empty() && std::hypot(p.x - hull.back().x, p.y - hull.back().y) < 1e-9) continue;
    hull.push_back(p);
  }
  if (hull.size() < 3) throw RegionError("region '" + name + "': intersection has no interior");
  Region r;
  r.name_ = std::move(name);
  r.rows_ = std::move(rows);
  r.vertices_ = std::move(hull);
  return r;
}

double Region::violation(Point p) const {
  double worst = -std::numeric_limits<double>::infinity();
  for (const auto& h : rows_) worst = std::max(worst, h.ax * p.x + h.ay * p.y - h.b);
  return worst;
}

Box Region::bounds() const {
  Box b{vertices_[0].x, vertices_[0].x, vertices_[0].y, vertices_[0].y};
  for (const auto& v : vertices_) {
    b.xmin = std::min(b.xmin, v.x);
    b.xmax = std::max(b.xmax, v.x);
    b.ymin = std::min(b.ymin, v.y);
    b.ymax = std::max(b.ymax, v.y);
  }
  return b;
}

double Region::big_m(int row, const Box& box) const {
  const HalfPlane& h = rows_.at(row);
  return std::max(h.ax * box.xmin, h.ax * box.xmax) + std::max(h.ay * box.ymin, h.ay * box.ymax) -
         h.b;
}

}  // namespace ltlplan::model

#pragma once

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace ltlplan::model {

struct Point {
  double x = 0.0;
  double y = 0.0;
};

/// Axis-aligned box used for the workspace and for big-M computation.
struct Box {
  double xmin = -10.0;
  double xmax = 10.0;
  double ymin = -10.0;
  double ymax = 10.0;
};

/// One supporting half-plane a.p <= b with a unit outward normal.
struct HalfPlane {
  double ax = 0.0;
  double ay = 0.0;
  double b = 0.0;
};

class RegionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Convex polygonal region. The theta column of the constraint matrix is
/// always zero, so only the footstep position is constrained.
class Region {
 public:
  /// Vertices in counterclockwise order; the polygon must be strictly
  /// convex with positive area.
  static Region from_vertices(std::string name, std::vector<Point> vertices);
  /// Intersection of half-planes; must be nonempty and bounded. Normals
  /// are normalized.
  static Region from_halfplanes(std::string name, std::vector<HalfPlane> rows);

  const std::string& name() const { return name_; }
  const std::vector<HalfPlane>& rows() const { return rows_; }
  const std::vector<Point>& vertices() const { return vertices_; }

  /// Largest a.p - b over the polygon; <= tol means inside.
  double violation(Point p) const;
  bool contains(Point p, double tol = 1e-9) const { return violation(p) <= tol; }
  Box bounds() const;
  /// max over the box of (a.p - b) for row `row`.
  double big_m(int row, const Box& box) const;

 private:
  std::string name_;
  std::vector<HalfPlane> rows_;
  std::vector<Point> vertices_;
};

}  // namespace ltlplan::model

#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

namespace cheeger2d {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};
using Point2 = Vec2;

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 v) { return {s * v.x, s * v.y}; }
inline Vec2 operator*(Vec2 v, double s) { return s * v; }
inline Vec2 operator-(Vec2 v) { return {-v.x, -v.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Vec2 v) { return std::hypot(v.x, v.y); }
inline double dist(Point2 a, Point2 b) { return norm(b - a); }

/// Left-hand perpendicular; for a unit tangent of a counter-clockwise
/// boundary this is the inner unit normal.
inline Vec2 perp_left(Vec2 v) { return {-v.y, v.x}; }

Vec2 normalized(Vec2 v);

/// Simple closed planar polygon, stored counter-clockwise.
///
/// Construction validates the invariants (>= 3 vertices, no repeated
/// consecutive vertices, no self-intersection, nonzero area) and flips a
/// clockwise input to counter-clockwise.
class Polygon {
 public:
  explicit Polygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const { return vertices_; }
  std::size_t size() const { return vertices_.size(); }

  double area() const { return area_; }
  double perimeter() const { return perimeter_; }
  /// Max pairwise vertex distance.
  double diameter() const { return diameter_; }

  /// Convexity by cross products of consecutive edges, with a relative
  /// angular slack of `rel_tol` so collinear vertices (e.g. from boundary
  /// resampling) do not flip the verdict.
  bool is_convex(double rel_tol = 1e-10) const;

 private:
  std::vector<Point2> vertices_;
  double area_ = 0.0;
  double perimeter_ = 0.0;
  double diameter_ = 0.0;
  bool convex_ = false;  // cached at rel_tol = 1e-10
};

/// (area, perimeter) of a polygon; area is the positive shoelace value.
std::pair<double, double> polygon_area_perimeter(const Polygon& p);

/// Inner parallel set of a convex polygon: the intersection of the inward
/// r-offsets of all edge half-planes. Empty when r reaches the inradius;
/// results degenerated to a point/segment also count as empty.
std::optional<Polygon> inner_parallel(const Polygon& p, double r);

/// Area of the inner parallel set (0 when empty). Allocation-light path
/// used by the root search in the exact Cheeger solver.
double inner_parallel_area(const Polygon& p, double r);

/// Radius of the largest inscribed disk, located by bisection on the
/// emptiness of the same half-plane offsets that inner_parallel uses.
double inradius(const Polygon& p);

/// Signed distance surrogate for convex polygons: max over edges of the
/// signed distance to the outward edge half-plane. Negative inside, exact
/// up to corner regions outside.
double signed_distance_convex(const Polygon& p, Point2 q);

/// Even-odd point-in-polygon test for arbitrary simple polygons.
bool point_in_polygon(const Polygon& p, Point2 q);

// ---------------------------------------------------------------------------
// Regions bounded by chains of segments and circular arcs.
// ---------------------------------------------------------------------------

struct Segment {
  Point2 start;
  Point2 end;
};

/// Circular arc swept counter-clockwise from angle_start to angle_end
/// (angle_end > angle_start, sweep < 2*pi).
struct Arc {
  Point2 center;
  double radius = 0.0;
  double angle_start = 0.0;
  double angle_end = 0.0;
};

using BoundaryPiece = std::variant<Segment, Arc>;

Point2 piece_start(const BoundaryPiece& piece);
Point2 piece_end(const BoundaryPiece& piece);
double piece_length(const BoundaryPiece& piece);
/// Point at arc-length parameter s in [0, piece_length].
Point2 piece_point(const BoundaryPiece& piece, double s);
/// Unit tangent in traversal direction at arc-length s.
Vec2 piece_tangent(const BoundaryPiece& piece, double s);
/// Inner unit normal (left of the tangent; (center - p)/radius on arcs of a
/// counter-clockwise convex boundary).
Vec2 piece_inner_normal(const BoundaryPiece& piece, double s);
/// Curvature with the convention H = -div of the inner normal along the
/// boundary: 0 on segments, +1/radius on convex arcs.
double piece_curvature(const BoundaryPiece& piece);

/// Region whose boundary is a single closed counter-clockwise chain of
/// segments and arcs (the shape of Cheeger sets of convex domains).
///
/// Construction checks piece validity, end-to-start chaining (mismatch
/// <= 1e-12 of the region diameter) and positive enclosed area.
class ArcBoundaryRegion {
 public:
  explicit ArcBoundaryRegion(std::vector<BoundaryPiece> pieces);

  const std::vector<BoundaryPiece>& pieces() const { return pieces_; }
  double area() const { return area_; }
  double perimeter() const { return perimeter_; }
  double diameter() const { return diameter_; }

  /// True when some joint has a tangent jump above angle_tol radians.
  bool has_corner(double angle_tol = 1e-9) const;

 private:
  std::vector<BoundaryPiece> pieces_;
  double area_ = 0.0;
  double perimeter_ = 0.0;
  double diameter_ = 0.0;
};

/// (area, perimeter) via piecewise Green's theorem (closed forms per piece).
std::pair<double, double> region_area_perimeter(const ArcBoundaryRegion& a);

/// Outward offset of a convex polygon by a disk of radius r: edges translate
/// outward, vertices become arcs. Satisfies the Steiner identities
/// area = |P| + r*Per(P) + pi r^2 and perimeter = Per(P) + 2 pi r.
ArcBoundaryRegion minkowski_sum_disk(const Polygon& p, double r);

/// Insert points along edges so the result has >= n vertices while keeping
/// the original vertex set; max edge length <= 2*perimeter/n.
Polygon resample_boundary(const Polygon& p, std::size_t n);

/// Disk assembled from `arcs` equal arcs (exact representation).
ArcBoundaryRegion make_disk(Point2 center, double radius, int arcs = 4);

/// Total turning of the boundary: arc sweeps plus tangent jumps at joints.
/// Equals 2*pi for simple counter-clockwise regions.
double total_turning(const ArcBoundaryRegion& a);

}  // namespace cheeger2d

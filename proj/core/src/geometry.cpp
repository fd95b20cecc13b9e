#include "cheeger2d/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cheeger2d/errors.hpp"

namespace cheeger2d {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

double shoelace(const std::vector<Point2>& v) {
  double twice = 0.0;
  for (std::size_t i = 0, n = v.size(); i < n; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % n];
    twice += cross(a, b);
  }
  return 0.5 * twice;
}

double bbox_diag(const std::vector<Point2>& v) {
  double minx = v[0].x, maxx = v[0].x, miny = v[0].y, maxy = v[0].y;
  for (const Point2& p : v) {
    minx = std::min(minx, p.x);
    maxx = std::max(maxx, p.x);
    miny = std::min(miny, p.y);
    maxy = std::max(maxy, p.y);
  }
  return std::hypot(maxx - minx, maxy - miny);
}

// Proper crossing test for segments ab and cd (strict interior crossing).
bool segments_cross(Point2 a, Point2 b, Point2 c, Point2 d) {
  const double d1 = cross(d - c, a - c);
  const double d2 = cross(d - c, b - c);
  const double d3 = cross(b - a, c - a);
  const double d4 = cross(b - a, d - a);
  return ((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
         ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0));
}

// Clip a convex polygon against the half-plane dot(x - p0, n) >= 0.
// Sutherland-Hodgman step; returns early once the result cannot recover.
std::vector<Point2> clip_halfplane(const std::vector<Point2>& poly, Point2 p0,
                                   Vec2 n) {
  std::vector<Point2> out;
  out.reserve(poly.size() + 1);
  const std::size_t m = poly.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& u = poly[i];
    const Point2& v = poly[(i + 1) % m];
    const double du = dot(u - p0, n);
    const double dv = dot(v - p0, n);
    if (du >= 0.0) out.push_back(u);
    if ((du >= 0.0) != (dv >= 0.0)) {
      const double t = du / (du - dv);
      out.push_back(u + t * (v - u));
    }
  }
  return out;
}

// Inward offsets of all edges intersected together. `early_exit` stops as
// soon as the intersection degenerates (used by the inradius search).
std::vector<Point2> inner_parallel_raw(const std::vector<Point2>& verts,
                                       double r, bool early_exit) {
  std::vector<Point2> poly = verts;
  const std::size_t n = verts.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = verts[i];
    const Point2& b = verts[(i + 1) % n];
    const Vec2 e = b - a;
    const double len = norm(e);
    if (len == 0.0) continue;
    const Vec2 n_in = perp_left({e.x / len, e.y / len});
    poly = clip_halfplane(poly, a + r * n_in, n_in);
    if (poly.size() < 3) {
      if (early_exit) return {};
      poly.clear();
      return poly;
    }
  }
  return poly;
}

// Merge consecutive near-identical points (closure included).
std::vector<Point2> dedupe_ring(std::vector<Point2> v, double tol) {
  std::vector<Point2> out;
  out.reserve(v.size());
  for (const Point2& p : v) {
    if (out.empty() || dist(out.back(), p) > tol) out.push_back(p);
  }
  while (out.size() > 1 && dist(out.front(), out.back()) <= tol)
    out.pop_back();
  return out;
}

double normalize_sweep(double a) {
  while (a <= 0.0) a += kTwoPi;
  while (a > kTwoPi) a -= kTwoPi;
  return a;
}

}  // namespace

Vec2 normalized(Vec2 v) {
  const double len = norm(v);
  if (!(len > 0.0)) throw std::invalid_argument("normalized: zero vector");
  return {v.x / len, v.y / len};
}

// ---------------------------------------------------------------------------
// Polygon
// ---------------------------------------------------------------------------

Polygon::Polygon(std::vector<Point2> vertices) : vertices_(std::move(vertices)) {
  if (vertices_.size() < 3)
    throw std::invalid_argument("Polygon: need at least 3 vertices");
  for (const Point2& p : vertices_) {
    if (!std::isfinite(p.x) || !std::isfinite(p.y))
      throw std::invalid_argument("Polygon: non-finite coordinate");
  }

  const double diag = bbox_diag(vertices_);
  if (!(diag > 0.0)) throw std::invalid_argument("Polygon: all vertices equal");
  const double tol = 1e-14 * diag;

  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (dist(vertices_[i], vertices_[(i + 1) % n]) <= tol)
      throw std::invalid_argument("Polygon: repeated consecutive vertex");
  }

  double signed_area = shoelace(vertices_);
  if (std::abs(signed_area) <= 1e-15 * diag * diag)
    throw std::invalid_argument("Polygon: degenerate (zero area)");
  if (signed_area < 0.0) {
    std::reverse(vertices_.begin(), vertices_.end());
    signed_area = -signed_area;
  }
  area_ = signed_area;

  perimeter_ = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    perimeter_ += dist(vertices_[i], vertices_[(i + 1) % n]);

  // One quadratic pass: diameter and simplicity. Edge pairs sharing a vertex
  // are skipped by the crossing test; distinct edges may not touch at all.
  diameter_ = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      diameter_ = std::max(diameter_, dist(vertices_[i], vertices_[j]));
      const bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (adjacent) continue;
      const Point2& a = vertices_[i];
      const Point2& b = vertices_[i + 1];
      const Point2& c = vertices_[j];
      const Point2& d = vertices_[(j + 1) % n];
      if (segments_cross(a, b, c, d))
        throw std::invalid_argument("Polygon: self-intersecting boundary");
    }
  }

  convex_ = is_convex(1e-10);
}

bool Polygon::is_convex(double rel_tol) const {
  if (rel_tol == 1e-10 && !vertices_.empty() && convex_) return true;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e1 = vertices_[(i + 1) % n] - vertices_[i];
    const Vec2 e2 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
    if (cross(e1, e2) < -rel_tol * norm(e1) * norm(e2)) return false;
  }
  return true;
}

std::pair<double, double> polygon_area_perimeter(const Polygon& p) {
  return {p.area(), p.perimeter()};
}

// ---------------------------------------------------------------------------
// Erosion / inradius
// ---------------------------------------------------------------------------

std::optional<Polygon> inner_parallel(const Polygon& p, double r) {
  if (!p.is_convex())
    throw std::invalid_argument("inner_parallel: polygon must be convex");
  if (r < 0.0) throw std::invalid_argument("inner_parallel: negative radius");
  if (r == 0.0) return p;

  std::vector<Point2> raw = inner_parallel_raw(p.vertices(), r, false);
  raw = dedupe_ring(std::move(raw), 1e-14 * p.diameter());
  if (raw.size() < 3) return std::nullopt;
  if (std::abs(shoelace(raw)) <= 1e-15 * p.diameter() * p.diameter())
    return std::nullopt;
  return Polygon(std::move(raw));
}

double inner_parallel_area(const Polygon& p, double r) {
  if (!p.is_convex())
    throw std::invalid_argument("inner_parallel_area: polygon must be convex");
  if (r < 0.0)
    throw std::invalid_argument("inner_parallel_area: negative radius");
  if (r == 0.0) return p.area();
  const std::vector<Point2> raw = inner_parallel_raw(p.vertices(), r, false);
  if (raw.size() < 3) return 0.0;
  return std::max(0.0, shoelace(raw));
}

double inradius(const Polygon& p) {
  if (!p.is_convex())
    throw std::invalid_argument("inradius: polygon must be convex");
  // pi r_in^2 <= |P| gives a guaranteed infeasible upper bound.
  double lo = 0.0;
  double hi = std::sqrt(p.area() / kPi);
  while (!inner_parallel_raw(p.vertices(), hi, true).empty()) hi *= 1.5;
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (inner_parallel_raw(p.vertices(), mid, true).empty())
      hi = mid;
    else
      lo = mid;
  }
  return lo;
}

double signed_distance_convex(const Polygon& p, Point2 q) {
  if (!p.is_convex())
    throw std::invalid_argument("signed_distance_convex: polygon must be convex");
  double d = -std::numeric_limits<double>::infinity();
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = v[(i + 1) % n] - v[i];
    const Vec2 n_out = -perp_left(normalized(e));
    d = std::max(d, dot(q - v[i], n_out));
  }
  return d;
}

bool point_in_polygon(const Polygon& p, Point2 q) {
  bool inside = false;
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % n];
    if ((a.y > q.y) != (b.y > q.y)) {
      const double xint = a.x + (q.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (q.x < xint) inside = !inside;
    }
  }
  return inside;
}

// ---------------------------------------------------------------------------
// Boundary pieces
// ---------------------------------------------------------------------------

Point2 piece_start(const BoundaryPiece& piece) {
  if (const auto* s = std::get_if<Segment>(&piece)) return s->start;
  const Arc& a = std::get<Arc>(piece);
  return a.center + a.radius * Vec2{std::cos(a.angle_start), std::sin(a.angle_start)};
}

Point2 piece_end(const BoundaryPiece& piece) {
  if (const auto* s = std::get_if<Segment>(&piece)) return s->end;
  const Arc& a = std::get<Arc>(piece);
  return a.center + a.radius * Vec2{std::cos(a.angle_end), std::sin(a.angle_end)};
}

double piece_length(const BoundaryPiece& piece) {
  if (const auto* s = std::get_if<Segment>(&piece)) return dist(s->start, s->end);
  const Arc& a = std::get<Arc>(piece);
  return a.radius * (a.angle_end - a.angle_start);
}

Point2 piece_point(const BoundaryPiece& piece, double s) {
  if (const auto* seg = std::get_if<Segment>(&piece)) {
    const double len = dist(seg->start, seg->end);
    return seg->start + (s / len) * (seg->end - seg->start);
  }
  const Arc& a = std::get<Arc>(piece);
  const double th = a.angle_start + s / a.radius;
  return a.center + a.radius * Vec2{std::cos(th), std::sin(th)};
}

Vec2 piece_tangent(const BoundaryPiece& piece, double s) {
  if (const auto* seg = std::get_if<Segment>(&piece))
    return normalized(seg->end - seg->start);
  const Arc& a = std::get<Arc>(piece);
  const double th = a.angle_start + s / a.radius;
  return {-std::sin(th), std::cos(th)};
}

Vec2 piece_inner_normal(const BoundaryPiece& piece, double s) {
  return perp_left(piece_tangent(piece, s));
}

double piece_curvature(const BoundaryPiece& piece) {
  if (std::holds_alternative<Segment>(piece)) return 0.0;
  return 1.0 / std::get<Arc>(piece).radius;
}

// ---------------------------------------------------------------------------
// ArcBoundaryRegion
// ---------------------------------------------------------------------------

ArcBoundaryRegion::ArcBoundaryRegion(std::vector<BoundaryPiece> pieces)
    : pieces_(std::move(pieces)) {
  if (pieces_.empty())
    throw std::invalid_argument("ArcBoundaryRegion: empty piece list");

  std::vector<Point2> samples;
  for (const BoundaryPiece& piece : pieces_) {
    if (const auto* s = std::get_if<Segment>(&piece)) {
      if (!(dist(s->start, s->end) > 0.0))
        throw std::invalid_argument("ArcBoundaryRegion: zero-length segment");
      samples.push_back(s->start);
      samples.push_back(s->end);
    } else {
      const Arc& a = std::get<Arc>(piece);
      if (!(a.radius > 0.0))
        throw std::invalid_argument("ArcBoundaryRegion: non-positive arc radius");
      const double sweep = a.angle_end - a.angle_start;
      if (!(sweep > 0.0) || !(sweep < kTwoPi))
        throw std::invalid_argument("ArcBoundaryRegion: arc sweep must be in (0, 2pi)");
      samples.push_back(piece_start(piece));
      samples.push_back(piece_end(piece));
      // Axis extremes covered by the sweep, for a faithful bounding box.
      for (int k = -8; k <= 8; ++k) {
        const double th = 0.5 * kPi * k;
        if (th > a.angle_start && th < a.angle_end)
          samples.push_back(a.center + a.radius * Vec2{std::cos(th), std::sin(th)});
      }
    }
  }
  diameter_ = bbox_diag(samples);
  if (!(diameter_ > 0.0))
    throw std::invalid_argument("ArcBoundaryRegion: degenerate boundary");

  const double tol = 1e-12 * diameter_;
  const std::size_t n = pieces_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2 e = piece_end(pieces_[i]);
    const Point2 s = piece_start(pieces_[(i + 1) % n]);
    if (dist(e, s) > tol)
      throw std::invalid_argument("ArcBoundaryRegion: open chain (pieces do not close)");
  }

  // Green's theorem: area = 1/2 * closed integral of (x dy - y dx).
  double twice_area = 0.0;
  perimeter_ = 0.0;
  for (const BoundaryPiece& piece : pieces_) {
    perimeter_ += piece_length(piece);
    if (const auto* s = std::get_if<Segment>(&piece)) {
      twice_area += cross(s->start, s->end);
    } else {
      const Arc& a = std::get<Arc>(piece);
      const double s0 = a.angle_start, s1 = a.angle_end;
      twice_area += a.radius * (a.center.x * (std::sin(s1) - std::sin(s0)) +
                                a.center.y * (std::cos(s0) - std::cos(s1))) +
                    a.radius * a.radius * (s1 - s0);
    }
  }
  area_ = 0.5 * twice_area;
  if (!(area_ > 0.0))
    throw std::invalid_argument("ArcBoundaryRegion: boundary must be counter-clockwise");
}

bool ArcBoundaryRegion::has_corner(double angle_tol) const {
  const std::size_t n = pieces_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const BoundaryPiece& cur = pieces_[i];
    const BoundaryPiece& nxt = pieces_[(i + 1) % n];
    const Vec2 t0 = piece_tangent(cur, piece_length(cur));
    const Vec2 t1 = piece_tangent(nxt, 0.0);
    const double turn = std::atan2(cross(t0, t1), dot(t0, t1));
    if (std::abs(turn) > angle_tol) return true;
  }
  return false;
}

std::pair<double, double> region_area_perimeter(const ArcBoundaryRegion& a) {
  return {a.area(), a.perimeter()};
}

double total_turning(const ArcBoundaryRegion& a) {
  double turning = 0.0;
  const auto& pieces = a.pieces();
  const std::size_t n = pieces.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (const Arc* arc = std::get_if<Arc>(&pieces[i]))
      turning += arc->angle_end - arc->angle_start;
    const Vec2 t0 = piece_tangent(pieces[i], piece_length(pieces[i]));
    const Vec2 t1 = piece_tangent(pieces[(i + 1) % n], 0.0);
    turning += std::atan2(cross(t0, t1), dot(t0, t1));
  }
  return turning;
}

// ---------------------------------------------------------------------------
// Constructions
// ---------------------------------------------------------------------------

ArcBoundaryRegion minkowski_sum_disk(const Polygon& p, double r) {
  if (!p.is_convex())
    throw std::invalid_argument("minkowski_sum_disk: polygon must be convex");
  if (!(r > 0.0))
    throw std::invalid_argument("minkowski_sum_disk: radius must be positive");

  const auto& v = p.vertices();
  const std::size_t n = v.size();
  const double scale = p.diameter() + r;

  std::vector<double> out_angle(n);  // outward normal angle per edge
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 e = v[(i + 1) % n] - v[i];
    const Vec2 n_out = -perp_left(normalized(e));
    out_angle[i] = std::atan2(n_out.y, n_out.x);
  }

  std::vector<BoundaryPiece> pieces;
  pieces.reserve(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t j = (i + 1) % n;
    const Vec2 n_out{std::cos(out_angle[i]), std::sin(out_angle[i])};
    const Point2 s0 = v[i] + r * n_out;
    const Point2 s1 = v[j] + r * n_out;
    if (dist(s0, s1) > 1e-14 * scale) pieces.push_back(Segment{s0, s1});
    const double sweep = normalize_sweep(out_angle[j] - out_angle[i]);
    if (sweep > 1e-12 && sweep < kPi + 1e-9) {
      pieces.push_back(
          Arc{v[j], r, out_angle[i], out_angle[i] + sweep});
    }
  }
  return ArcBoundaryRegion(std::move(pieces));
}

Polygon resample_boundary(const Polygon& p, std::size_t n) {
  const auto& v = p.vertices();
  if (n < v.size())
    throw std::invalid_argument("resample_boundary: n below current vertex count");

  const double target = p.perimeter() / static_cast<double>(n);
  std::vector<Point2> out;
  out.reserve(n + v.size());
  const std::size_t m = v.size();
  for (std::size_t i = 0; i < m; ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % m];
    const double len = dist(a, b);
    const auto k = static_cast<std::size_t>(std::max(1.0, std::ceil(len / target)));
    for (std::size_t q = 0; q < k; ++q) {
      const double t = static_cast<double>(q) / static_cast<double>(k);
      out.push_back(a + t * (b - a));
    }
  }
  // Rounding could in principle leave us one short; split the longest edge.
  while (out.size() < n) {
    std::size_t imax = 0;
    double lmax = 0.0;
    for (std::size_t i = 0; i < out.size(); ++i) {
      const double len = dist(out[i], out[(i + 1) % out.size()]);
      if (len > lmax) {
        lmax = len;
        imax = i;
      }
    }
    const Point2 mid = out[imax] + 0.5 * (out[(imax + 1) % out.size()] - out[imax]);
    out.insert(out.begin() + static_cast<std::ptrdiff_t>(imax) + 1, mid);
  }
  return Polygon(std::move(out));
}

ArcBoundaryRegion make_disk(Point2 center, double radius, int arcs) {
  if (!(radius > 0.0)) throw std::invalid_argument("make_disk: radius must be positive");
  if (arcs < 2) throw std::invalid_argument("make_disk: need at least 2 arcs");
  std::vector<BoundaryPiece> pieces;
  pieces.reserve(static_cast<std::size_t>(arcs));
  for (int k = 0; k < arcs; ++k) {
    const double a0 = kTwoPi * k / arcs;
    const double a1 = kTwoPi * (k + 1) / arcs;
    pieces.push_back(Arc{center, radius, a0, a1});
  }
  return ArcBoundaryRegion(std::move(pieces));
}

}  // namespace cheeger2d

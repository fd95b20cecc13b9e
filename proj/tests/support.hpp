#pragma once

// Shared fixtures for the test suites: canonical domains, seeded random
// generators for property tests, and small independent oracles (the test
// side of two-route checks; they must not reuse library code paths).

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "cheeger2d/fields.hpp"
#include "cheeger2d/geometry.hpp"

namespace testsupport {

using cheeger2d::ArcBoundaryRegion;
using cheeger2d::BivariatePoly;
using cheeger2d::MonomialTerm;
using cheeger2d::Point2;
using cheeger2d::Polygon;
using cheeger2d::PolynomialVectorField;

inline Polygon unit_square() {
  return Polygon({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
}

inline Polygon rectangle(double w, double h) {
  return Polygon({{0, 0}, {w, 0}, {w, h}, {0, h}});
}

inline Polygon regular_ngon(int n, double radius = 1.0, Point2 center = {0, 0}) {
  std::vector<Point2> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double a = 2.0 * 3.141592653589793238462643383279502884 * k / n;
    pts.push_back(center + radius * cheeger2d::Vec2{std::cos(a), std::sin(a)});
  }
  return Polygon(std::move(pts));
}

inline Polygon l_shape() {
  return Polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
}

// Random convex polygon: jittered radial points around a circle, convex
// hull by monotone chain (test-local; intentionally not the library path).
inline Polygon random_convex_polygon(std::mt19937& rng, int max_vertices = 10) {
  std::uniform_int_distribution<int> nd(5, std::max(5, max_vertices + 4));
  std::uniform_real_distribution<double> rd(0.5, 1.5);
  std::uniform_real_distribution<double> cd(-1.0, 1.0);
  while (true) {
    const int n = nd(rng);
    std::vector<double> angles(static_cast<std::size_t>(n));
    std::uniform_real_distribution<double> ad(0.0, 2.0 * 3.14159265358979323846);
    for (double& a : angles) a = ad(rng);
    std::sort(angles.begin(), angles.end());
    const Point2 center{cd(rng), cd(rng)};
    std::vector<Point2> pts;
    for (double a : angles) {
      const double r = rd(rng);
      pts.push_back(center + r * cheeger2d::Vec2{std::cos(a), std::sin(a)});
    }
    std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
      return a.x < b.x || (a.x == b.x && a.y < b.y);
    });
    std::vector<Point2> hull(2 * pts.size());
    std::size_t k = 0;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      while (k >= 2 &&
             cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 1e-12)
        --k;
      hull[k++] = pts[i];
    }
    const std::size_t lower = k + 1;
    for (std::size_t i = pts.size() - 1; i-- > 0;) {
      while (k >= lower &&
             cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 1e-12)
        --k;
      hull[k++] = pts[i];
    }
    hull.resize(k - 1);
    if (hull.size() < 4) continue;
    try {
      return Polygon(std::move(hull));
    } catch (const std::exception&) {
      continue;
    }
  }
}

inline PolynomialVectorField random_field(std::mt19937& rng, int degree) {
  std::uniform_real_distribution<double> cd(-2.0, 2.0);
  std::vector<MonomialTerm> vx, vy;
  for (int i = 0; i + 0 <= degree; ++i)
    for (int j = 0; i + j <= degree; ++j) {
      vx.push_back({i, j, cd(rng)});
      vy.push_back({i, j, cd(rng)});
    }
  return {BivariatePoly::from_terms(vx), BivariatePoly::from_terms(vy)};
}

// Dense polyline sampling of an arc/segment chain, for even-odd queries.
inline std::vector<Point2> region_polyline(const ArcBoundaryRegion& region,
                                           int per_piece = 256) {
  std::vector<Point2> pts;
  for (const auto& piece : region.pieces()) {
    const double len = cheeger2d::piece_length(piece);
    for (int q = 0; q < per_piece; ++q)
      pts.push_back(cheeger2d::piece_point(piece, len * q / per_piece));
  }
  return pts;
}

inline bool point_in_polyline(const std::vector<Point2>& ring, Point2 q) {
  bool inside = false;
  for (std::size_t i = 0, n = ring.size(); i < n; ++i) {
    const Point2& a = ring[i];
    const Point2& b = ring[(i + 1) % n];
    if ((a.y > q.y) != (b.y > q.y)) {
      const double xint = a.x + (q.y - a.y) / (b.y - a.y) * (b.x - a.x);
      if (q.x < xint) inside = !inside;
    }
  }
  return inside;
}

// Bisection oracle for the frozen expected values of the exact solver.
inline double bisect(const std::function<double(double)>& f, double lo, double hi,
                     int iters = 200) {
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace testsupport

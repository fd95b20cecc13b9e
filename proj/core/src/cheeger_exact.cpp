#include "cheeger2d/cheeger_exact.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "cheeger2d/errors.hpp"

namespace cheeger2d {

namespace {
constexpr double kPi = std::numbers::pi;
}

CheegerResult cheeger_convex(const Polygon& p) {
  if (!p.is_convex())
    throw SolverError(
        "cheeger_convex: domain is not convex; use the grid solver");

  const double domain_area = p.area();

  // f(r) = |P_{-r}| - pi r^2 is strictly decreasing with f(0) = |P| > 0 and
  // f(inradius) = -pi inradius^2 < 0. Bisect to floating-point exhaustion;
  // that comfortably clears |f| <= 1e-13 |P| and interval <= 1e-13.
  double lo = 0.0;
  double hi = inradius(p);
  if (!(hi > 0.0)) throw SolverError("cheeger_convex: degenerate domain");

  const auto f = [&](double r) { return inner_parallel_area(p, r) - kPi * r * r; };

  int iterations = 0;
  double mid = 0.5 * hi;
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    ++iterations;
    if (f(mid) > 0.0)
      lo = mid;
    else
      hi = mid;
  }
  const double r_star = 0.5 * (lo + hi);
  if (!(r_star > 0.0)) throw SolverError("cheeger_convex: root search collapsed");

  const auto core = inner_parallel(p, r_star);
  if (!core)
    throw SolverError("cheeger_convex: inner parallel set vanished at the root");

  ArcBoundaryRegion set = minkowski_sum_disk(*core, r_star);
  const auto [set_area, set_perimeter] = region_area_perimeter(set);

  CheegerResult result{
      .lambda = 1.0 / r_star,
      .radius = r_star,
      .cheeger_set = std::move(set),
      .set_area = set_area,
      .set_perimeter = set_perimeter,
      .solver_tag = SolverTag::exact,
      .diagnostics = {},
      .grid = std::nullopt,
  };
  result.diagnostics.iterations = iterations;
  result.diagnostics.residual = std::abs(f(r_star)) / domain_area;
  return result;
}

Calibrability is_calibrable(const ArcBoundaryRegion& a) {
  Calibrability out;
  out.threshold = a.perimeter() / a.area();
  if (a.has_corner()) {
    out.corner = true;
    out.max_curvature = std::numeric_limits<double>::infinity();
    out.calibrable = false;
    return out;
  }
  double max_curv = 0.0;
  for (const BoundaryPiece& piece : a.pieces())
    max_curv = std::max(max_curv, piece_curvature(piece));
  out.max_curvature = max_curv;
  // Slack makes the analytic equality case (a Cheeger set of its own
  // domain, max curvature = Per/|A| exactly) land on the "true" side.
  out.calibrable = max_curv <= out.threshold * (1.0 + 1e-9);
  return out;
}

}  // namespace cheeger2d

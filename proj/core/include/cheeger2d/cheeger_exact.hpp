#pragma once

#include "cheeger2d/geometry.hpp"
#include "cheeger2d/result.hpp"

namespace cheeger2d {

/// Cheeger constant and Cheeger set of a convex polygon.
///
/// Uses the inner-parallel-set characterization: the Cheeger radius r* is
/// the unique root of |P_{-r}| = pi r^2 and the Cheeger set is the outward
/// r*-rounding of the eroded polygon P_{-r*}. The root is bracketed by
/// [0, inradius] and located by bisection (the erosion area is piecewise
/// quadratic with kinks where edges vanish, so derivative-free wins).
///
/// Throws SolverError for non-convex input, pointing at the grid solver.
CheegerResult cheeger_convex(const Polygon& p);

/// Verdict of the curvature criterion "max boundary curvature <=
/// perimeter/area" deciding whether a convex region is its own Cheeger set.
struct Calibrability {
  bool calibrable = false;
  bool corner = false;  // tangent discontinuity: curvature unbounded
  double max_curvature = 0.0;
  double threshold = 0.0;  // perimeter/area
};

Calibrability is_calibrable(const ArcBoundaryRegion& a);

}  // namespace cheeger2d

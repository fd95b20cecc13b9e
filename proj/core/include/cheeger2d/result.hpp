#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "cheeger2d/geometry.hpp"

namespace cheeger2d {

enum class SolverTag { exact, grid };

struct SolveDiagnostics {
  int iterations = 0;       // bisection steps / outer ratio iterations
  double residual = 0.0;    // scaled root residual / last ratio decrease
  int inner_iterations = 0; // total primal-dual iterations (grid solver)
  bool possible_nonuniqueness = false;
  std::vector<double> lambda_history;  // grid solver ratio per outer step
};

/// Raster payload attached to grid-solver results: the best binary level
/// set and its traced boundary contours (largest first).
struct GridSetData {
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  Point2 origin;  // center of cell (0, 0)
  std::vector<std::uint8_t> set_mask;
  std::vector<Polygon> contours;
};

struct CheegerResult {
  double lambda = 0.0;  // perimeter/area of the returned set
  double radius = 0.0;  // 1/lambda
  ArcBoundaryRegion cheeger_set;
  double set_area = 0.0;
  double set_perimeter = 0.0;
  SolverTag solver_tag = SolverTag::exact;
  SolveDiagnostics diagnostics;
  std::optional<GridSetData> grid;
};

}  // namespace cheeger2d

#pragma once

#include <cstdint>
#include <vector>

#include "cheeger2d/geometry.hpp"
#include "cheeger2d/result.hpp"

namespace cheeger2d {

/// Uniform raster of a domain. Cells are squares of side h with centers at
/// origin + (i*h, j*h); mask marks cells inside the domain. A margin of at
/// least two all-false cells surrounds the mask on every side, so discrete
/// gradients over the padded grid automatically pick up the boundary term
/// of functions extended by zero.
class GridDomain {
 public:
  GridDomain(double h, int nx, int ny, Point2 origin,
             std::vector<std::uint8_t> mask);

  double h() const { return h_; }
  int nx() const { return nx_; }
  int ny() const { return ny_; }
  Point2 origin() const { return origin_; }
  const std::vector<std::uint8_t>& mask() const { return mask_; }

  std::size_t idx(int i, int j) const {
    return static_cast<std::size_t>(j) * static_cast<std::size_t>(nx_) +
           static_cast<std::size_t>(i);
  }
  Point2 cell_center(int i, int j) const {
    return {origin_.x + i * h_, origin_.y + j * h_};
  }
  int mask_count() const { return mask_count_; }

 private:
  double h_;
  int nx_, ny_;
  Point2 origin_;
  std::vector<std::uint8_t> mask_;
  int mask_count_ = 0;
};

/// Raster function aligned with a GridDomain (zero outside the mask).
struct GridField {
  double h = 0.0;
  int nx = 0;
  int ny = 0;
  std::vector<double> values;

  explicit GridField(const GridDomain& d)
      : h(d.h()), nx(d.nx()), ny(d.ny()), values(d.mask().size(), 0.0) {}
  GridField(double h_, int nx_, int ny_, std::vector<double> v)
      : h(h_), nx(nx_), ny(ny_), values(std::move(v)) {}
};

/// Mask the cells whose centers fall inside the polygon; h must resolve the
/// domain (h <= diameter/8). Adds the 2-cell zero margin.
GridDomain rasterize(const Polygon& p, double h);

/// Isotropic discrete total variation over the padded grid:
/// sum of h * sqrt(dx^2 + dy^2) with forward differences. For fields that
/// vanish on the margin this includes the boundary contribution of the
/// zero extension.
double total_variation(const GridField& u);

struct GridOptions {
  double h = 1.0 / 128;  // used by callers that rasterize on demand
  int max_outer = 40;
  int max_inner = 5000;
  double tol = 1e-6;        // relative stop for the outer ratio iteration
  double inner_tol = 1e-2;  // relative primal-dual gap for the inner solver
  int threshold_levels = 64;
};

/// Ratio minimization of boundary/area over subsets of the mask.
///
/// Outer loop (monotone ratio updates): given lambda_k, the inner
/// primal-dual solver minimizes TV(u) - lambda_k h^2 sum(u) over
/// 0 <= u <= 1 supported on the mask; u is then thresholded at
/// `threshold_levels` evenly spaced levels in (0,1) and lambda_{k+1} is the
/// best (perimeter/area) ratio among the level sets. Stops when the ratio
/// decrease falls below tol or after max_outer rounds.
///
/// The returned lambda equals TV(set indicator)/(h^2 * cells) of the
/// returned set exactly. Non-convergence of the inner solver raises
/// SolverError with iteration diagnostics.
CheegerResult cheeger_grid(const GridDomain& domain, const GridOptions& opts = {});

/// Marching-squares contours of a binary raster at level 1/2, counter-
/// clockwise around the set, largest area first. Exposed for tests and for
/// boundary post-processing of grid results.
std::vector<Polygon> trace_binary_contours(const GridDomain& domain,
                                           const std::vector<std::uint8_t>& set_mask);

}  // namespace cheeger2d

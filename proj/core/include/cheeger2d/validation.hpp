#pragma once

#include <span>
#include <vector>

#include "cheeger2d/cheeger_grid.hpp"
#include "cheeger2d/fields.hpp"
#include "cheeger2d/geometry.hpp"

namespace cheeger2d {

enum class Backend { exact, grid };

struct FDConfig {
  double t0 = 1e-2;      // base step
  int levels = 3;        // Richardson levels (central slopes at t0/2^k)
  int resample_n = 2048; // boundary points before mapping nonlinear fields
  Backend backend = Backend::exact;
  GridOptions grid;      // grid-backend solver options (including grid.h)
};

/// Image of the polygon under x + t V(x). Degree-1 fields map edges to
/// edges and the vertices are mapped directly; higher-degree fields bend
/// edges, so the boundary is resampled to resample_n points first. Errors
/// when |t| max|DV| exceeds the diffeomorphism safety margin or the image
/// self-intersects.
Polygon perturb_domain(const Polygon& p, const PolynomialVectorField& v, double t,
                       int resample_n);

/// Residuals of the first-order determinant and normal-stretch expansions
///     det(I + t DV) = 1 + t div V + O(t^2)
///     |(I + t DV)^{-1} nu| = 1 - t (nu, DV nu) + O(t^2)
/// at point p, for each t in t_list (positive, decreasing).
struct ExpansionResiduals {
  std::vector<double> t;
  std::vector<double> det_residual;
  std::vector<double> normal_residual;
};

ExpansionResiduals expansion_check(const PolynomialVectorField& v, Point2 p,
                                   std::span<const double> t_list,
                                   Vec2 nu = {1.0, 0.0});

/// True when consecutive residuals at (t, t/2) shrink like O(t^2): each
/// ratio lies in [3.5, 4.5]. Pairs at roundoff level (both residuals below
/// zero_tol) are exact-zero cases and are skipped.
bool residual_ratios_ok(std::span<const double> residuals, double zero_tol = 1e-11);

struct ValidationReport {
  double formula_value = 0.0;    // boundary-quadrature rate on the base domain
  double fd_slope = 0.0;         // finest un-extrapolated central slope
  double richardson_slope = 0.0;
  double lambda_base = 0.0;
  std::vector<std::pair<double, double>> lambda_by_t;  // (t, lambda_t), ascending t
  std::vector<double> level_slopes;                    // central slope per level
  double continuity_gap = 0.0;   // max_t |lambda_t - lambda|
  double tolerance = 0.0;
  bool pass = false;
};

/// Independent check of the boundary-quadrature rate: perturb the polygon
/// through x + tV, re-run the full solver at t = +-t0/2^k, difference the
/// eigenvalues centrally and Richardson-extrapolate. The per-t solves share
/// no code with the quadrature formulas and run concurrently.
ValidationReport validate_derivative(const Polygon& p, const PolynomialVectorField& v,
                                     const FDConfig& cfg);

}  // namespace cheeger2d

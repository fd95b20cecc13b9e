#include "cheeger2d/validation.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>

#include "cheeger2d/cheeger_exact.hpp"
#include "cheeger2d/errors.hpp"
#include "cheeger2d/shape_derivative.hpp"

namespace cheeger2d {

namespace {

double max_jacobian_norm(const PolynomialVectorField& v,
                         const std::vector<Point2>& pts) {
  double m = 0.0;
  for (const Point2& p : pts) {
    const Mat2 j = v.jacobian(p);
    m = std::max(m, std::sqrt(j.a00 * j.a00 + j.a01 * j.a01 + j.a10 * j.a10 +
                              j.a11 * j.a11));
  }
  return m;
}

double solve_lambda(const Polygon& p, const FDConfig& cfg) {
  if (cfg.backend == Backend::exact) return cheeger_convex(p).lambda;
  return cheeger_grid(rasterize(p, cfg.grid.h), cfg.grid).lambda;
}

// Andrew's monotone chain; returns the hull counter-clockwise.
std::vector<Point2> convex_hull(std::vector<Point2> pts) {
  std::sort(pts.begin(), pts.end(), [](Point2 a, Point2 b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  pts.erase(std::unique(pts.begin(), pts.end(),
                        [](Point2 a, Point2 b) { return a.x == b.x && a.y == b.y; }),
            pts.end());
  const std::size_t n = pts.size();
  if (n < 3) return pts;
  std::vector<Point2> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  const std::size_t lower = k + 1;
  for (std::size_t i = n - 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], pts[i] - hull[k - 2]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  return hull;
}

}  // namespace

Polygon perturb_domain(const Polygon& p, const PolynomialVectorField& v, double t,
                       int resample_n) {
  const Polygon* base = &p;
  std::optional<Polygon> resampled;
  if (v.degree() >= 2 && t != 0.0) {
    // Nonlinear fields bend edges; sample densely so the polygonal image
    // tracks the curved boundary. Degree <= 1 maps edges to edges exactly.
    const std::size_t n = std::max<std::size_t>(static_cast<std::size_t>(resample_n),
                                                p.size());
    resampled = resample_boundary(p, n);
    base = &*resampled;
  }

  const double dv_max = max_jacobian_norm(v, base->vertices());
  if (std::abs(t) * dv_max > 0.5)
    throw PreconditionError("perturb_domain: |t| max|DV| = " +
                            std::to_string(std::abs(t) * dv_max) +
                            " exceeds the diffeomorphism margin 0.5");

  std::vector<Point2> image;
  image.reserve(base->size());
  for (const Point2& x : base->vertices()) image.push_back(x + t * v.eval(x));

  Polygon mapped = [&] {
    try {
      return Polygon(std::move(image));
    } catch (const std::invalid_argument& e) {
      throw SolverError("perturb_domain: image polygon invalid at t = " +
                        std::to_string(t) + " (" + e.what() + "); reduce t");
    }
  }();

  // Chord sampling of a curved image can dip below convexity by the
  // sampling error ~ perimeter^2 max|D^2 V| t / n^2. Concavities at that
  // scale are snapped to the convex hull; anything deeper is a genuinely
  // non-convex image and is returned as-is (the exact solver rejects it).
  if (!mapped.is_convex()) {
    std::vector<Point2> hull = convex_hull(mapped.vertices());
    if (hull.size() >= 3) {
      Polygon hull_poly(std::move(hull));
      double deviation = 0.0;
      for (const Point2& q : mapped.vertices())
        deviation = std::max(deviation, -signed_distance_convex(hull_poly, q));
      if (deviation <= 1e-6 * mapped.diameter()) return hull_poly;
    }
  }
  return mapped;
}

ExpansionResiduals expansion_check(const PolynomialVectorField& v, Point2 p,
                                   std::span<const double> t_list, Vec2 nu) {
  if (t_list.empty())
    throw std::invalid_argument("expansion_check: empty t list");
  for (std::size_t k = 0; k < t_list.size(); ++k) {
    if (!(t_list[k] > 0.0) || (k > 0 && t_list[k] >= t_list[k - 1]))
      throw std::invalid_argument("expansion_check: t list must be positive, decreasing");
  }
  nu = normalized(nu);

  ExpansionResiduals out;
  const Mat2 dv = v.jacobian(p);
  const double div = v.divergence(p);
  const double nDVn = dot(nu, dv.apply(nu));
  for (const double t : t_list) {
    const Mat2 m{1.0 + t * dv.a00, t * dv.a01, t * dv.a10, 1.0 + t * dv.a11};
    if (std::abs(m.det()) < 1e-12)
      throw PreconditionError("expansion_check: I + t DV is singular at t = " +
                              std::to_string(t));
    out.t.push_back(t);
    out.det_residual.push_back(std::abs(m.det() - (1.0 + t * div)));
    out.normal_residual.push_back(std::abs(norm(inverse(m).apply(nu)) - (1.0 - t * nDVn)));
  }
  return out;
}

bool residual_ratios_ok(std::span<const double> residuals, double zero_tol) {
  for (std::size_t k = 0; k + 1 < residuals.size(); ++k) {
    const double coarse = residuals[k];
    const double fine = residuals[k + 1];
    if (coarse <= zero_tol && fine <= zero_tol) continue;  // exact-zero family
    if (fine <= 0.0) return false;
    const double ratio = coarse / fine;
    if (ratio < 3.5 || ratio > 4.5) return false;
  }
  return true;
}

ValidationReport validate_derivative(const Polygon& p, const PolynomialVectorField& v,
                                     const FDConfig& cfg) {
  if (!(cfg.t0 > 0.0) || cfg.levels < 1 || cfg.resample_n < 64)
    throw std::invalid_argument("validate_derivative: bad configuration");
  if (cfg.backend == Backend::exact && !p.is_convex())
    throw SolverError("validate_derivative: exact backend needs a convex domain");

  // Base solve supplies lambda and the set the quadrature runs on.
  ValidationReport report;
  const CheegerResult base = cfg.backend == Backend::exact
                                 ? cheeger_convex(p)
                                 : cheeger_grid(rasterize(p, cfg.grid.h), cfg.grid);
  report.lambda_base = base.lambda;
  report.formula_value = derivative_general(base.cheeger_set, base.lambda, v);

  // Perturbed eigenvalues at +-t0/2^k; independent solves, run concurrently.
  std::vector<double> ts;
  for (int k = 0; k < cfg.levels; ++k) {
    const double t = cfg.t0 / static_cast<double>(1 << k);
    ts.push_back(t);
    ts.push_back(-t);
  }
  std::vector<std::future<double>> jobs;
  jobs.reserve(ts.size());
  for (const double t : ts) {
    jobs.push_back(std::async(std::launch::async, [&, t] {
      return solve_lambda(perturb_domain(p, v, t, cfg.resample_n), cfg);
    }));
  }
  std::vector<double> lambdas(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    try {
      lambdas[k] = jobs[k].get();
    } catch (const Error&) {
      throw;
    } catch (const std::exception& e) {
      throw SolverError("validate_derivative: perturbed solve failed at t = " +
                        std::to_string(ts[k]) + ": " + e.what());
    }
  }

  for (std::size_t k = 0; k < ts.size(); ++k) {
    report.lambda_by_t.emplace_back(ts[k], lambdas[k]);
    report.continuity_gap = std::max(report.continuity_gap,
                                     std::abs(lambdas[k] - base.lambda));
  }
  std::sort(report.lambda_by_t.begin(), report.lambda_by_t.end());

  // Central slope per level, then a classic Richardson triangle (central
  // differences carry only even powers of t).
  std::vector<double> slopes(cfg.levels);
  for (int k = 0; k < cfg.levels; ++k) {
    const double t = cfg.t0 / static_cast<double>(1 << k);
    slopes[k] = (lambdas[2 * k] - lambdas[2 * k + 1]) / (2.0 * t);
  }
  report.level_slopes = slopes;
  report.fd_slope = slopes.back();

  std::vector<double> table = slopes;
  for (int m = 1; m < cfg.levels; ++m) {
    const double pow4 = std::pow(4.0, m);
    for (int k = cfg.levels - 1; k >= m; --k)
      table[k] = (pow4 * table[k] - table[k - 1]) / (pow4 - 1.0);
  }
  report.richardson_slope = table.back();

  const double rel = cfg.backend == Backend::exact ? 1e-3 : 5e-2;
  report.tolerance = rel * std::max(1.0, std::abs(report.formula_value));
  report.pass = std::abs(report.richardson_slope - report.formula_value) <=
                report.tolerance;
  return report;
}

}  // namespace cheeger2d

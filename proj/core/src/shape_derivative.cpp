#include "cheeger2d/shape_derivative.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "cheeger2d/errors.hpp"

namespace cheeger2d {

namespace {
constexpr double kPi = std::numbers::pi;

void validate_rule(const QuadratureRule& rule) {
  if (rule.nodes < 2)
    throw std::invalid_argument("QuadratureRule: need at least 2 nodes");
  if (!(rule.max_arc_angle > 0.0) || rule.max_arc_angle > 0.5 * kPi + 1e-15)
    throw std::invalid_argument("QuadratureRule: arc panel angle must be in (0, pi/2]");
}

GaussLegendre compute_gauss_legendre(int n) {
  GaussLegendre gl;
  gl.nodes.resize(n);
  gl.weights.resize(n);
  const int m = (n + 1) / 2;
  for (int i = 0; i < m; ++i) {
    // Chebyshev initial guess, then Newton on P_n.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int k = 0; k < n; ++k) {
        const double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * k + 1.0) * x * p1 - k * p2) / (k + 1.0);
      }
      dp = n * (x * p0 - p1) / (x * x - 1.0);
      const double delta = p0 / dp;
      x -= delta;
      if (std::abs(delta) < 1e-15) break;
    }
    gl.nodes[i] = -x;
    gl.nodes[n - 1 - i] = x;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    gl.weights[i] = w;
    gl.weights[n - 1 - i] = w;
  }
  return gl;
}

// Closed-form integrand of the general formula.
double general_integrand(const PolynomialVectorField& v, double lambda,
                         Point2 p, Vec2 nu) {
  const Mat2 dv = v.jacobian(p);
  return v.divergence(p) - dot(nu, dv.apply(nu)) + lambda * dot(v.eval(p), nu);
}

template <typename F>
double integrate_piece(const BoundaryPiece& piece, const QuadratureRule& rule,
                       F&& integrand) {
  const GaussLegendre& gl = gauss_legendre(rule.nodes);
  double acc = 0.0;
  if (const auto* seg = std::get_if<Segment>(&piece)) {
    const double len = dist(seg->start, seg->end);
    const Vec2 tau = normalized(seg->end - seg->start);
    const Vec2 nu = perp_left(tau);
    for (int q = 0; q < rule.nodes; ++q) {
      const double s = 0.5 * (gl.nodes[q] + 1.0) * len;
      acc += gl.weights[q] * integrand(seg->start + s * tau, nu);
    }
    return acc * 0.5 * len;
  }
  const Arc& arc = std::get<Arc>(piece);
  const double sweep = arc.angle_end - arc.angle_start;
  const int panels = std::max(1, static_cast<int>(std::ceil(sweep / rule.max_arc_angle)));
  const double dth = sweep / panels;
  for (int pan = 0; pan < panels; ++pan) {
    const double th0 = arc.angle_start + pan * dth;
    double panel = 0.0;
    for (int q = 0; q < rule.nodes; ++q) {
      const double th = th0 + 0.5 * (gl.nodes[q] + 1.0) * dth;
      const Vec2 radial{std::cos(th), std::sin(th)};
      const Point2 p = arc.center + arc.radius * radial;
      const Vec2 nu = -radial;  // inner normal of a CCW convex arc
      panel += gl.weights[q] * integrand(p, nu);
    }
    acc += panel * 0.5 * dth * arc.radius;
  }
  return acc;
}

}  // namespace

const GaussLegendre& gauss_legendre(int n) {
  if (n < 1) throw std::invalid_argument("gauss_legendre: n must be positive");
  static std::mutex mutex;
  static std::map<int, GaussLegendre> cache;
  std::lock_guard<std::mutex> lock(mutex);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, compute_gauss_legendre(n)).first;
  return it->second;
}

double derivative_general(const ArcBoundaryRegion& a, double lambda,
                          const PolynomialVectorField& v,
                          const QuadratureRule& rule) {
  return derivative_report(a, lambda, v, rule, false).value_general;
}

double derivative_smooth(const ArcBoundaryRegion& a, double lambda,
                         const PolynomialVectorField& v,
                         const QuadratureRule& rule) {
  validate_rule(rule);
  if (!(lambda > 0.0))
    throw PreconditionError("derivative_smooth: lambda must be positive");
  if (a.has_corner())
    throw PreconditionError(
        "derivative_smooth: boundary has corners; the curvature form needs a "
        "tangent-continuous chain (use derivative_general)");

  double acc = 0.0;
  for (const BoundaryPiece& piece : a.pieces()) {
    const double curvature = piece_curvature(piece);
    // On a Cheeger set of a convex domain the arcs satisfy H = lambda and
    // contribute exactly zero.
    if (std::holds_alternative<Arc>(piece) && std::abs(lambda - curvature) <= 1e-12)
      continue;
    acc += integrate_piece(piece, rule, [&](Point2 p, Vec2 nu) {
      return (lambda - curvature) * dot(v.eval(p), nu);
    });
  }
  return acc / a.area();
}

DerivativeReport derivative_report(const ArcBoundaryRegion& a, double lambda,
                                   const PolynomialVectorField& v,
                                   const QuadratureRule& rule, bool want_smooth) {
  validate_rule(rule);
  if (!(lambda > 0.0))
    throw PreconditionError("derivative_general: lambda must be positive");

  DerivativeReport report;
  report.lambda = lambda;
  report.area = a.area();
  report.per_piece.reserve(a.pieces().size());

  double acc = 0.0;
  for (const BoundaryPiece& piece : a.pieces()) {
    const double contrib = integrate_piece(piece, rule, [&](Point2 p, Vec2 nu) {
      return general_integrand(v, lambda, p, nu);
    });
    report.per_piece.push_back(contrib / report.area);
    acc += contrib;
  }
  report.value_general = acc / report.area;

  if (want_smooth && !a.has_corner())
    report.value_smooth = derivative_smooth(a, lambda, v, rule);
  return report;
}

double tangential_identity_residual(const ArcBoundaryRegion& a,
                                    const PolynomialVectorField& v,
                                    std::size_t piece_index, double s,
                                    double step) {
  if (piece_index >= a.pieces().size())
    throw std::invalid_argument("tangential_identity_residual: bad piece index");
  if (!(step > 0.0))
    throw std::invalid_argument("tangential_identity_residual: step must be positive");
  const BoundaryPiece& piece = a.pieces()[piece_index];
  const double len = piece_length(piece);
  if (s - 2.0 * step <= 0.0 || s + 2.0 * step >= len)
    throw PreconditionError(
        "tangential_identity_residual: stencil reaches a joint; pick an "
        "interior point or a smaller step");

  const auto g = [&](double t) {
    return dot(v.eval(piece_point(piece, t)), piece_tangent(piece, t));
  };
  const double dg = (-g(s + 2.0 * step) + 8.0 * g(s + step) - 8.0 * g(s - step) +
                     g(s - 2.0 * step)) /
                    (12.0 * step);

  const Point2 p = piece_point(piece, s);
  const Vec2 nu = piece_inner_normal(piece, s);
  const Mat2 dv = v.jacobian(p);
  const double lhs = v.divergence(p) - dot(nu, dv.apply(nu));
  const double rhs = dg - piece_curvature(piece) * dot(v.eval(p), nu);
  return std::abs(lhs - rhs);
}

}  // namespace cheeger2d

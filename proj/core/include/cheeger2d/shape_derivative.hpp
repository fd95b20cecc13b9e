#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "cheeger2d/fields.hpp"
#include "cheeger2d/geometry.hpp"

namespace cheeger2d {

/// Boundary quadrature parameters: Gauss-Legendre node count per segment
/// (and per arc panel), and the max angular sweep of one arc panel.
struct QuadratureRule {
  int nodes = 8;
  double max_arc_angle = 0.19634954084936207;  // pi/16
};

/// Gauss-Legendre nodes and weights on [-1, 1] (computed once per n).
struct GaussLegendre {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendre& gauss_legendre(int n);

/// Rate of change of the boundary/area ratio of A under x + tV(x):
/// (1/|A|) * integral over the boundary of
///     div V - (nu, DV nu) + lambda (V, nu)
/// with nu the inner unit normal. Valid on any closed segment/arc chain.
double derivative_general(const ArcBoundaryRegion& a, double lambda,
                          const PolynomialVectorField& v,
                          const QuadratureRule& rule = {});

/// Same rate via the curvature form (1/|A|) * integral of
/// (lambda - H)(V, nu) with H = 0 on segments and 1/radius on arcs.
/// Requires a tangent-continuous chain; arcs with |lambda - 1/radius| <=
/// 1e-12 contribute exactly zero and are skipped.
double derivative_smooth(const ArcBoundaryRegion& a, double lambda,
                         const PolynomialVectorField& v,
                         const QuadratureRule& rule = {});

struct DerivativeReport {
  double value_general = 0.0;
  std::optional<double> value_smooth;  // absent when the chain has corners
  std::vector<double> per_piece;       // contributions to value_general
  double lambda = 0.0;
  double area = 0.0;
};

DerivativeReport derivative_report(const ArcBoundaryRegion& a, double lambda,
                                   const PolynomialVectorField& v,
                                   const QuadratureRule& rule = {},
                                   bool want_smooth = true);

/// Residual of the tangential-divergence identity
///     div V - (nu, DV nu) = d/ds (V . tau) - H (V, nu)
/// at arc-length s inside piece `piece_index`, with the s-derivative taken
/// by 5-point finite differences of step `step`. Errors out when the
/// stencil would cross a joint.
double tangential_identity_residual(const ArcBoundaryRegion& a,
                                    const PolynomialVectorField& v,
                                    std::size_t piece_index, double s,
                                    double step);

}  // namespace cheeger2d

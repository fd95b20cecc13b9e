#include <cmath>
#include <numbers>
#include <random>

#include <doctest.h>

#include "cheeger2d/cheeger_exact.hpp"
#include "cheeger2d/errors.hpp"
#include "cheeger2d/shape_derivative.hpp"
#include "support.hpp"

using namespace cheeger2d;
using namespace testsupport;

namespace {
constexpr double kPi = std::numbers::pi;

ArcBoundaryRegion square_as_region() {
  return ArcBoundaryRegion({Segment{{0, 0}, {1, 0}}, Segment{{1, 0}, {1, 1}},
                            Segment{{1, 1}, {0, 1}}, Segment{{0, 1}, {0, 0}}});
}

PolynomialVectorField swap_field() {  // (y, x), divergence-free
  const MonomialTerm vx[] = {{0, 1, 1.0}};
  const MonomialTerm vy[] = {{1, 0, 1.0}};
  return {BivariatePoly::from_terms(vx), BivariatePoly::from_terms(vy)};
}

PolynomialVectorField squares_field() {  // (y^2, x^2), divergence-free
  const MonomialTerm vx[] = {{0, 2, 1.0}};
  const MonomialTerm vy[] = {{2, 0, 1.0}};
  return {BivariatePoly::from_terms(vx), BivariatePoly::from_terms(vy)};
}
}  // namespace

TEST_SUITE("shape_derivative") {

TEST_CASE("gauss-legendre integrates polynomials exactly") {
  const GaussLegendre& gl = gauss_legendre(8);
  for (int k = 0; k <= 15; ++k) {
    double acc = 0.0;
    for (int q = 0; q < 8; ++q) acc += gl.weights[q] * std::pow(gl.nodes[q], k);
    const double expected = (k % 2 == 0) ? 2.0 / (k + 1) : 0.0;
    CHECK(std::abs(acc - expected) <= 1e-14);
  }
}

TEST_CASE("unit disk under dilation has rate -lambda") {
  const ArcBoundaryRegion disk = make_disk({0, 0}, 1.0);
  const double lambda = 2.0;  // Per/|A| of the disk, its own Cheeger set
  CHECK(derivative_general(disk, lambda, PolynomialVectorField::dilation()) ==
        doctest::Approx(-2.0).epsilon(1e-12));
  CHECK(derivative_smooth(disk, lambda, PolynomialVectorField::dilation()) ==
        doctest::Approx(-2.0).epsilon(1e-12));
}

TEST_CASE("unit disk under translations and rotations is flat") {
  const ArcBoundaryRegion disk = make_disk({0, 0}, 1.0);
  CHECK(std::abs(derivative_general(disk, 2.0, PolynomialVectorField::translation_x())) <=
        1e-12);
  CHECK(std::abs(derivative_smooth(disk, 2.0, PolynomialVectorField::translation_x())) <=
        1e-12);
  CHECK(std::abs(derivative_general(disk, 2.0, PolynomialVectorField::rotation())) <=
        1e-12);
}

TEST_CASE("square Cheeger set under dilation") {
  const CheegerResult res = cheeger_convex(unit_square());
  const double d = derivative_general(res.cheeger_set, res.lambda,
                                      PolynomialVectorField::dilation());
  CHECK(std::abs(d - (-res.lambda)) <= 1e-9);
  // smooth boundary: the curvature form must agree
  const double ds = derivative_smooth(res.cheeger_set, res.lambda,
                                      PolynomialVectorField::dilation());
  CHECK(std::abs(d - ds) <= 1e-8 * (1.0 + std::abs(d)));
}

TEST_CASE("curvature form rejects corners") {
  CHECK_THROWS_AS(derivative_smooth(square_as_region(), 2.0,
                                    PolynomialVectorField::dilation()),
                  PreconditionError);
  const DerivativeReport rep = derivative_report(
      square_as_region(), 2.0, PolynomialVectorField::dilation(), {}, true);
  CHECK_FALSE(rep.value_smooth.has_value());
  CHECK(rep.per_piece.size() == 4);
}

TEST_CASE("rates are rejected for non-positive lambda") {
  CHECK_THROWS_AS(derivative_general(make_disk({0, 0}, 1.0), 0.0,
                                     PolynomialVectorField::dilation()),
                  PreconditionError);
}

TEST_CASE("formula agreement on random Cheeger sets") {
  std::mt19937 rng(601);
  for (int trial = 0; trial < 20; ++trial) {
    const Polygon p = random_convex_polygon(rng);
    const CheegerResult res = cheeger_convex(p);
    for (int f = 0; f < 5; ++f) {
      const PolynomialVectorField v = random_field(rng, 2);
      const double g = derivative_general(res.cheeger_set, res.lambda, v);
      const double s = derivative_smooth(res.cheeger_set, res.lambda, v);
      CHECK(std::abs(g - s) <= 1e-8 * (1.0 + std::abs(g)));
    }
  }
}

TEST_CASE("linearity in the field") {
  std::mt19937 rng(602);
  const CheegerResult res = cheeger_convex(regular_ngon(6));
  std::uniform_real_distribution<double> cd(-2.0, 2.0);
  for (int trial = 0; trial < 8; ++trial) {
    const PolynomialVectorField v = random_field(rng, 2);
    const PolynomialVectorField w = random_field(rng, 2);
    const double a = cd(rng), b = cd(rng);
    const double combined =
        derivative_general(res.cheeger_set, res.lambda, v * a + w * b);
    const double split = a * derivative_general(res.cheeger_set, res.lambda, v) +
                         b * derivative_general(res.cheeger_set, res.lambda, w);
    CHECK(std::abs(combined - split) <= 1e-10 * (1.0 + std::abs(split)));
  }
}

TEST_CASE("constant fields produce zero rate") {
  std::mt19937 rng(603);
  for (int trial = 0; trial < 8; ++trial) {
    const CheegerResult res = cheeger_convex(random_convex_polygon(rng));
    CHECK(std::abs(derivative_general(res.cheeger_set, res.lambda,
                                      PolynomialVectorField::translation_x())) <= 1e-10);
    CHECK(std::abs(derivative_general(res.cheeger_set, res.lambda,
                                      PolynomialVectorField::translation_y())) <= 1e-10);
  }
}

TEST_CASE("dilation about any center gives -lambda") {
  std::mt19937 rng(604);
  std::uniform_real_distribution<double> cd(-3.0, 3.0);
  for (const Polygon& p : {unit_square(), rectangle(2, 1), regular_ngon(6)}) {
    const CheegerResult res = cheeger_convex(p);
    for (int k = 0; k < 3; ++k) {
      const PolynomialVectorField v =
          PolynomialVectorField::dilation_about({cd(rng), cd(rng)});
      CHECK(std::abs(derivative_general(res.cheeger_set, res.lambda, v) +
                     res.lambda) <= 1e-9);
    }
  }
}

TEST_CASE("quadrature refinement is inert on polynomial fields") {
  std::mt19937 rng(605);
  const CheegerResult res = cheeger_convex(random_convex_polygon(rng));
  const PolynomialVectorField v = random_field(rng, 4);
  QuadratureRule coarse;  // 8 nodes
  QuadratureRule fine;
  fine.nodes = 16;
  fine.max_arc_angle = coarse.max_arc_angle / 2;
  const double a = derivative_general(res.cheeger_set, res.lambda, v, coarse);
  const double b = derivative_general(res.cheeger_set, res.lambda, v, fine);
  CHECK(std::abs(a - b) <= 1e-10 * (1.0 + std::abs(a)));
}

TEST_CASE("divergence-free fields leave the disk critical") {
  const ArcBoundaryRegion disk = make_disk({0, 0}, 1.0);
  for (const PolynomialVectorField& v :
       {PolynomialVectorField::rotation(), swap_field(), squares_field()}) {
    REQUIRE(v.is_divergence_free());
    CHECK(std::abs(derivative_general(disk, 2.0, v)) <= 1e-9);
    CHECK(std::abs(derivative_smooth(disk, 2.0, v)) <= 1e-9);
  }

  // polygonal disk: the Cheeger set of a 256-gon is an O((pi/n)^2) disk
  const CheegerResult res = cheeger_convex(regular_ngon(256));
  for (const PolynomialVectorField& v :
       {PolynomialVectorField::rotation(), swap_field(), squares_field()}) {
    CHECK(std::abs(derivative_general(res.cheeger_set, res.lambda, v)) <= 1e-3);
  }
}

TEST_CASE("tangential divergence identity") {
  // straight piece, dilation: div_bnd V = d/ds((p0 + s tau) . tau) = 1 and
  // div V - (nu, DV nu) = 2 - 1 = 1.
  const ArcBoundaryRegion square = square_as_region();
  CHECK(tangential_identity_residual(square, PolynomialVectorField::dilation(), 0,
                                     0.5, 1e-4) <= 1e-8);

  // arc piece, dilation about the arc center: (V,nu) = -r, H = 1/r.
  const ArcBoundaryRegion disk = make_disk({0.4, -0.2}, 0.7);
  CHECK(tangential_identity_residual(
            disk, PolynomialVectorField::dilation_about({0.4, -0.2}), 0,
            0.5 * piece_length(disk.pieces()[0]), 1e-4 * 0.7) <= 1e-6);

  // zero field: identically zero residual
  const PolynomialVectorField zero(BivariatePoly{}, BivariatePoly{});
  CHECK(tangential_identity_residual(square, zero, 1, 0.25, 1e-4) == 0.0);

  // random smooth fields on arcs
  std::mt19937 rng(606);
  for (int trial = 0; trial < 10; ++trial) {
    const PolynomialVectorField v = random_field(rng, 3);
    CHECK(tangential_identity_residual(disk, v, 2,
                                       0.3 * piece_length(disk.pieces()[2]),
                                       1e-4) <= 1e-6);
  }

  // stencil must stay inside the piece
  CHECK_THROWS_AS(tangential_identity_residual(square, PolynomialVectorField::dilation(),
                                               0, 1e-6, 1e-4),
                  PreconditionError);
}

}  // TEST_SUITE

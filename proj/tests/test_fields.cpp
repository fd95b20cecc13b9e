#include <cmath>
#include <random>

#include <doctest.h>

#include "cheeger2d/fields.hpp"
#include "support.hpp"

using namespace cheeger2d;
using namespace testsupport;

TEST_SUITE("fields") {

TEST_CASE("evaluation of named fields") {
  CHECK(PolynomialVectorField::dilation().eval({2, 3}).x == 2.0);
  CHECK(PolynomialVectorField::dilation().eval({2, 3}).y == 3.0);
  const Vec2 r = PolynomialVectorField::rotation().eval({1, 0});
  CHECK(r.x == 0.0);
  CHECK(r.y == 1.0);
  const Vec2 s = PolynomialVectorField::shear().eval({0.5, 2});
  CHECK(s.x == 2.0);
  CHECK(s.y == 0.0);
}

TEST_CASE("jacobians") {
  const Mat2 jd = PolynomialVectorField::dilation().jacobian({0.3, -0.7});
  CHECK(jd.a00 == 1.0);
  CHECK(jd.a01 == 0.0);
  CHECK(jd.a10 == 0.0);
  CHECK(jd.a11 == 1.0);

  const Mat2 jr = PolynomialVectorField::rotation().jacobian({5, 5});
  CHECK(jr.a00 == 0.0);
  CHECK(jr.a01 == -1.0);
  CHECK(jr.a10 == 1.0);
  CHECK(jr.a11 == 0.0);

  // V = (x^2, xy): DV(1,2) = [[2,0],[2,1]] by hand differentiation.
  const MonomialTerm vx[] = {{2, 0, 1.0}};
  const MonomialTerm vy[] = {{1, 1, 1.0}};
  PolynomialVectorField v(BivariatePoly::from_terms(vx), BivariatePoly::from_terms(vy));
  const Mat2 j = v.jacobian({1, 2});
  CHECK(j.a00 == 2.0);
  CHECK(j.a01 == 0.0);
  CHECK(j.a10 == 2.0);
  CHECK(j.a11 == 1.0);
  CHECK(v.divergence({1, 2}) == 3.0);
  CHECK(v.degree() == 2);
}

TEST_CASE("divergence") {
  CHECK(PolynomialVectorField::dilation().divergence({9, -4}) == 2.0);
  CHECK(PolynomialVectorField::rotation().divergence({9, -4}) == 0.0);
}

TEST_CASE("divergence-free detection is exact") {
  CHECK(PolynomialVectorField::rotation().is_divergence_free());
  CHECK_FALSE(PolynomialVectorField::dilation().is_divergence_free());
  const MonomialTerm vx[] = {{0, 2, 1.0}};
  const MonomialTerm vy[] = {{2, 0, 1.0}};
  PolynomialVectorField v(BivariatePoly::from_terms(vx), BivariatePoly::from_terms(vy));
  CHECK(v.is_divergence_free());
}

TEST_CASE("analytic jacobian matches finite differences") {
  std::mt19937 rng(42);
  std::uniform_real_distribution<double> pd(-1.0, 1.0);
  const double step = 1e-5;
  for (int trial = 0; trial < 25; ++trial) {
    PolynomialVectorField v = random_field(rng, 4);
    const Point2 p{pd(rng), pd(rng)};
    const Mat2 j = v.jacobian(p);
    const Vec2 fx = v.eval({p.x + step, p.y});
    const Vec2 bx = v.eval({p.x - step, p.y});
    const Vec2 fy = v.eval({p.x, p.y + step});
    const Vec2 by = v.eval({p.x, p.y - step});
    CHECK(std::abs((fx.x - bx.x) / (2 * step) - j.a00) <= 1e-6);
    CHECK(std::abs((fy.x - by.x) / (2 * step) - j.a01) <= 1e-6);
    CHECK(std::abs((fx.y - bx.y) / (2 * step) - j.a10) <= 1e-6);
    CHECK(std::abs((fy.y - by.y) / (2 * step) - j.a11) <= 1e-6);
    // divergence is the trace, exactly
    CHECK(v.divergence(p) == j.a00 + j.a11);
  }
}

TEST_CASE("linearity of field combinations") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> pd(-1.0, 1.0);
  for (int trial = 0; trial < 10; ++trial) {
    PolynomialVectorField v = random_field(rng, 3);
    PolynomialVectorField w = random_field(rng, 3);
    const double a = pd(rng), b = pd(rng);
    PolynomialVectorField combo = v * a + w * b;
    for (int q = 0; q < 5; ++q) {
      const Point2 p{pd(rng), pd(rng)};
      const Vec2 lhs = combo.eval(p);
      const Vec2 rhs = a * v.eval(p) + b * w.eval(p);
      CHECK(std::abs(lhs.x - rhs.x) <= 1e-12);
      CHECK(std::abs(lhs.y - rhs.y) <= 1e-12);
    }
  }
}

TEST_CASE("degree validation") {
  const MonomialTerm too_high[] = {{3, 2, 1.0}};
  CHECK_THROWS_AS(BivariatePoly::from_terms(too_high), std::invalid_argument);
  const MonomialTerm negative[] = {{-1, 0, 1.0}};
  CHECK_THROWS_AS(BivariatePoly::from_terms(negative), std::invalid_argument);
  const MonomialTerm nan_coeff[] = {{0, 0, std::nan("")}};
  CHECK_THROWS_AS(BivariatePoly::from_terms(nan_coeff), std::invalid_argument);
}

}  // TEST_SUITE

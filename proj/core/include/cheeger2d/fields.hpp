#pragma once

#include <array>
#include <cstddef>
#include <span>
#include <string>

#include "cheeger2d/geometry.hpp"

namespace cheeger2d {

/// 2x2 matrix, row-major: m(row, col).
struct Mat2 {
  double a00 = 0.0, a01 = 0.0;
  double a10 = 0.0, a11 = 0.0;

  Vec2 apply(Vec2 v) const { return {a00 * v.x + a01 * v.y, a10 * v.x + a11 * v.y}; }
  double det() const { return a00 * a11 - a01 * a10; }
  double trace() const { return a00 + a11; }
};

Mat2 inverse(const Mat2& m);

/// One coefficient of a bivariate polynomial: c * x^i * y^j.
struct MonomialTerm {
  int i = 0;
  int j = 0;
  double c = 0.0;
};

/// Bivariate polynomial of total degree <= 4 on a dense coefficient table.
class BivariatePoly {
 public:
  static constexpr int kMaxDegree = 4;

  BivariatePoly() = default;
  static BivariatePoly from_terms(std::span<const MonomialTerm> terms);

  double coeff(int i, int j) const { return c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]; }
  /// Horner evaluation, by x then by y.
  double eval(Point2 p) const;

  BivariatePoly dx() const;
  BivariatePoly dy() const;

  /// Exact test on the coefficient table.
  bool is_zero() const;
  int degree() const;  // -1 for the zero polynomial

  BivariatePoly operator+(const BivariatePoly& o) const;
  BivariatePoly operator*(double s) const;

 private:
  std::array<std::array<double, kMaxDegree + 1>, kMaxDegree + 1> c_{};
};

/// Deformation field V for the perturbations x + t V(x): two polynomial
/// components with analytically exact Jacobian and divergence.
class PolynomialVectorField {
 public:
  PolynomialVectorField(BivariatePoly vx, BivariatePoly vy);

  Vec2 eval(Point2 p) const { return {vx_.eval(p), vy_.eval(p)}; }

  /// DV(p) with rows = gradients of the components.
  Mat2 jacobian(Point2 p) const {
    return {dvx_dx_.eval(p), dvx_dy_.eval(p), dvy_dx_.eval(p), dvy_dy_.eval(p)};
  }

  /// div V(p), the trace of the Jacobian (exact coefficient identity).
  double divergence(Point2 p) const { return div_.eval(p); }

  /// Exact test: the divergence coefficient table is identically zero.
  bool is_divergence_free() const { return div_.is_zero(); }

  int degree() const;

  const BivariatePoly& vx() const { return vx_; }
  const BivariatePoly& vy() const { return vy_; }

  PolynomialVectorField operator+(const PolynomialVectorField& o) const;
  PolynomialVectorField operator*(double s) const;

  // Built-in named fields.
  static PolynomialVectorField dilation();       // (x, y)
  static PolynomialVectorField translation_x();  // (1, 0)
  static PolynomialVectorField translation_y();  // (0, 1)
  static PolynomialVectorField rotation();       // (-y, x)
  static PolynomialVectorField shear();          // (y, 0)
  /// x - x0, dilation about an arbitrary center.
  static PolynomialVectorField dilation_about(Point2 x0);
  /// Lookup by the names accepted in field spec files; throws ParseError.
  static PolynomialVectorField named(const std::string& name);

 private:
  BivariatePoly vx_, vy_;
  BivariatePoly dvx_dx_, dvx_dy_, dvy_dx_, dvy_dy_;
  BivariatePoly div_;
};

}  // namespace cheeger2d

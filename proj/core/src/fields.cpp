#include "cheeger2d/fields.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

#include "cheeger2d/errors.hpp"

namespace cheeger2d {

Mat2 inverse(const Mat2& m) {
  const double d = m.det();
  if (d == 0.0) throw std::invalid_argument("inverse: singular 2x2 matrix");
  return {m.a11 / d, -m.a01 / d, -m.a10 / d, m.a00 / d};
}

BivariatePoly BivariatePoly::from_terms(std::span<const MonomialTerm> terms) {
  BivariatePoly p;
  for (const MonomialTerm& t : terms) {
    if (t.i < 0 || t.j < 0 || t.i + t.j > kMaxDegree)
      throw std::invalid_argument("BivariatePoly: monomial degree out of range");
    if (!std::isfinite(t.c))
      throw std::invalid_argument("BivariatePoly: non-finite coefficient");
    p.c_[static_cast<std::size_t>(t.i)][static_cast<std::size_t>(t.j)] += t.c;
  }
  return p;
}

double BivariatePoly::eval(Point2 p) const {
  double acc = 0.0;
  for (int i = kMaxDegree; i >= 0; --i) {
    double row = 0.0;
    for (int j = kMaxDegree; j >= 0; --j)
      row = row * p.y + c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    acc = acc * p.x + row;
  }
  return acc;
}

BivariatePoly BivariatePoly::dx() const {
  BivariatePoly out;
  for (int i = 1; i <= kMaxDegree; ++i)
    for (int j = 0; j <= kMaxDegree; ++j)
      out.c_[static_cast<std::size_t>(i - 1)][static_cast<std::size_t>(j)] =
          i * c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

BivariatePoly BivariatePoly::dy() const {
  BivariatePoly out;
  for (int i = 0; i <= kMaxDegree; ++i)
    for (int j = 1; j <= kMaxDegree; ++j)
      out.c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j - 1)] =
          j * c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
  return out;
}

bool BivariatePoly::is_zero() const {
  for (const auto& row : c_)
    for (double v : row)
      if (v != 0.0) return false;
  return true;
}

int BivariatePoly::degree() const {
  int deg = -1;
  for (int i = 0; i <= kMaxDegree; ++i)
    for (int j = 0; j <= kMaxDegree; ++j)
      if (c_[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] != 0.0)
        deg = std::max(deg, i + j);
  return deg;
}

BivariatePoly BivariatePoly::operator+(const BivariatePoly& o) const {
  BivariatePoly out;
  for (std::size_t i = 0; i <= kMaxDegree; ++i)
    for (std::size_t j = 0; j <= kMaxDegree; ++j)
      out.c_[i][j] = c_[i][j] + o.c_[i][j];
  return out;
}

BivariatePoly BivariatePoly::operator*(double s) const {
  BivariatePoly out;
  for (std::size_t i = 0; i <= kMaxDegree; ++i)
    for (std::size_t j = 0; j <= kMaxDegree; ++j)
      out.c_[i][j] = s * c_[i][j];
  return out;
}

PolynomialVectorField::PolynomialVectorField(BivariatePoly vx, BivariatePoly vy)
    : vx_(vx),
      vy_(vy),
      dvx_dx_(vx.dx()),
      dvx_dy_(vx.dy()),
      dvy_dx_(vy.dx()),
      dvy_dy_(vy.dy()),
      div_(dvx_dx_ + dvy_dy_) {
  // div V is the trace of the Jacobian by construction.
  assert([&] {
    const BivariatePoly tr = dvx_dx_ + dvy_dy_;
    for (int i = 0; i <= BivariatePoly::kMaxDegree; ++i)
      for (int j = 0; j <= BivariatePoly::kMaxDegree; ++j)
        if (tr.coeff(i, j) != div_.coeff(i, j)) return false;
    return true;
  }());
}

int PolynomialVectorField::degree() const {
  return std::max(vx_.degree(), vy_.degree());
}

PolynomialVectorField PolynomialVectorField::operator+(const PolynomialVectorField& o) const {
  return {vx_ + o.vx_, vy_ + o.vy_};
}

PolynomialVectorField PolynomialVectorField::operator*(double s) const {
  return {vx_ * s, vy_ * s};
}

namespace {
BivariatePoly mono(int i, int j, double c) {
  const MonomialTerm t{i, j, c};
  return BivariatePoly::from_terms({&t, 1});
}
}  // namespace

PolynomialVectorField PolynomialVectorField::dilation() {
  return {mono(1, 0, 1.0), mono(0, 1, 1.0)};
}
PolynomialVectorField PolynomialVectorField::translation_x() {
  return {mono(0, 0, 1.0), BivariatePoly{}};
}
PolynomialVectorField PolynomialVectorField::translation_y() {
  return {BivariatePoly{}, mono(0, 0, 1.0)};
}
PolynomialVectorField PolynomialVectorField::rotation() {
  return {mono(0, 1, -1.0), mono(1, 0, 1.0)};
}
PolynomialVectorField PolynomialVectorField::shear() {
  return {mono(0, 1, 1.0), BivariatePoly{}};
}

PolynomialVectorField PolynomialVectorField::dilation_about(Point2 x0) {
  const MonomialTerm tx[] = {{1, 0, 1.0}, {0, 0, -x0.x}};
  const MonomialTerm ty[] = {{0, 1, 1.0}, {0, 0, -x0.y}};
  return {BivariatePoly::from_terms(tx), BivariatePoly::from_terms(ty)};
}

PolynomialVectorField PolynomialVectorField::named(const std::string& name) {
  if (name == "dilation") return dilation();
  if (name == "translation_x") return translation_x();
  if (name == "translation_y") return translation_y();
  if (name == "rotation") return rotation();
  if (name == "shear") return shear();
  throw ParseError("unknown field name: " + name);
}

}  // namespace cheeger2d

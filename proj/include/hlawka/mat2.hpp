#pragma once

#include <array>
#include <utility>

#include "hlawka/error.hpp"

namespace hlawka {

struct Vec2 {
  double x = 0.0;
  double y = 0.0;
};

// Real invertible 2x2 matrix, row-major [[a, b], [c, d]].
class Mat2 {
 public:
  // Throws DomainError when the determinant is zero or not finite.
  Mat2(double a, double b, double c, double d);

  static Mat2 identity() { return {1.0, 0.0, 0.0, 1.0}; }
  static Mat2 diag(double d1, double d2) { return {d1, 0.0, 0.0, d2}; }
  static Mat2 scalar(double c) { return {c, 0.0, 0.0, c}; }
  // kappa(phi) = [[cos, sin], [-sin, cos]]: a clockwise turn by phi.
  static Mat2 kappa(double phi);
  // Exact kappa(k*pi/2), free of the rounding in cos(pi/2).
  static Mat2 kappa_quarter(int k);
  // Counterclockwise turn by phi, i.e. kappa(-phi).
  static Mat2 rotation(double phi) { return kappa(-phi); }

  double a() const { return m_[0]; }
  double b() const { return m_[1]; }
  double c() const { return m_[2]; }
  double d() const { return m_[3]; }
  double operator()(int row, int col) const { return m_[static_cast<std::size_t>(2 * row + col)]; }
  double det() const { return det_; }

  Mat2 inverse() const;
  Mat2 transpose() const { return {m_[0], m_[2], m_[1], m_[3]}; }
  Vec2 apply(Vec2 v) const { return {m_[0] * v.x + m_[1] * v.y, m_[2] * v.x + m_[3] * v.y}; }
  // Operator 2-norm (largest singular value) and smallest singular value.
  double norm2() const;
  double min_singular() const;

  friend Mat2 operator*(const Mat2& lhs, const Mat2& rhs);

 private:
  std::array<double, 4> m_;
  double det_;
};

double max_entry_diff(const Mat2& x, const Mat2& y);

// g = diag(u, u) * [[y^1/2, x y^-1/2], [0, y^-1/2]] * kappa(theta).
struct IwasawaCoords {
  double u = 1.0;
  double x = 0.0;
  double y = 1.0;
  double theta = 0.0;  // in [0, 2pi)
};

IwasawaCoords iwasawa_decompose(const Mat2& g);
Mat2 iwasawa_compose(const IwasawaCoords& coords);

// g = kappa(phi1) * diag(d1, d2) * kappa(phi2), d1 >= d2 > 0.
struct CartanDecomposition {
  double phi1 = 0.0;
  double d1 = 1.0;
  double d2 = 1.0;
  double phi2 = 0.0;

  Mat2 left() const { return Mat2::kappa(phi1); }
  Mat2 right() const { return Mat2::kappa(phi2); }
  Mat2 compose() const { return left() * Mat2::diag(d1, d2) * right(); }
};

CartanDecomposition cartan_decompose(const Mat2& g);

// Angle in [0, 2pi) of the vector g (cos phi, sin phi).
double theta_g(const Mat2& g, double phi);

// Solves theta_g(g, phi) = psi by bisection on the monotone lift of the circle map.
double invert_theta_g(const Mat2& g, double psi, double tol = 1e-12);

// Reduces an angle into [0, 2pi).
double wrap_angle(double theta);

}  // namespace hlawka

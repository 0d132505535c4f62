#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "hlawka/mat2.hpp"

namespace hlawka {

enum class ShapeKind { constant, ellipse, square, odd, cosine_series, transformed };
enum class Smoothness { c1, lipschitz, piecewise_smooth };

std::string_view to_string(ShapeKind kind);
std::string_view to_string(Smoothness s);

// Symmetry order reported for shapes invariant under every rotation (circles).
inline constexpr int kContinuousSymmetry = 0;

// Star-shaped region given by its radial function r: [0, 2pi) -> (0, inf).
// Immutable; copies share the underlying representation.
class RadialShape {
 public:
  static RadialShape circle(double c = 1.0);
  // Semi-axes a >= b > 0, rotated counterclockwise by phi.
  static RadialShape ellipse(double a, double b, double phi = 0.0);
  // Side 2, centered at the origin.
  static RadialShape square();
  // Seven-segment polygon with the same spectrum as the square.
  static RadialShape odd();
  // r(theta) = sum_q c[q] cos(q theta); rejected unless positive on a 4096-point grid.
  static RadialShape cosine_series(std::vector<double> coeffs);
  // The image g . base under the GL(2,R) action.
  static RadialShape transformed(const RadialShape& base, const Mat2& g);

  ShapeKind kind() const;
  double radius(double theta) const;
  double operator()(double theta) const { return radius(theta); }

  // Smallest t > 0 with (x, y) in t D, i.e. |p| / r(theta(p)). Exact for the polygon kinds.
  double dilation(double x, double y) const;

  // Bounds with r_min <= r(theta) <= r_max everywhere (analytic or rigorous where possible).
  double r_min() const;
  double r_max() const;
  Smoothness smoothness() const;
  // Largest k with r(theta + 2pi/k) = r(theta); kContinuousSymmetry for circles.
  int symmetry_order() const;
  bool has_symmetry(int k) const;

  // Same kind, r multiplied by c > 0.
  RadialShape scaled(double c) const;
  // Product of all scaled() factors; 1 for unscaled shapes.
  double scale_factor() const;

  // Canonical text form, parseable by parse_shape.
  std::string describe() const;

  // Kind-specific accessors; throw DomainError for the wrong kind.
  double circle_radius() const;
  struct EllipseAxes {
    double a, b, phi;
  };
  EllipseAxes ellipse_axes() const;
  const std::vector<Vec2>& polygon_vertices() const;
  const std::vector<double>& cosine_coefficients() const;
  const RadialShape& base() const;
  const Mat2& matrix() const;

  struct Impl;

 private:
  explicit RadialShape(std::shared_ptr<const Impl> impl);
  std::shared_ptr<const Impl> impl_;
};

// The group action (g . r)(theta_g(phi)) = |g X(r(phi), phi)|.
RadialShape act(const Mat2& g, const RadialShape& shape);

// Area of the region, 1/2 int r^2 dtheta by the trapezoid rule on 2^14 points.
double area(const RadialShape& shape);

// Parses the shape mini-language: circle:c=1, ellipse:a=2,b=1,phi=0.3, square, odd,
// cos:c0=1,c4=0.1, with an optional @gl2=a,b,c,d suffix.
RadialShape parse_shape(std::string_view spec);

}  // namespace hlawka

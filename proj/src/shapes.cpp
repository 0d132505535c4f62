#include "hlawka/shapes.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iterator>
#include <limits>
#include <sstream>
#include <variant>

#include "hlawka/types.hpp"

namespace hlawka {

namespace {

constexpr int kGridSize = 4096;
constexpr double kSymmetryTol = 1e-10;

struct ConstantData {
  double c;
};

struct EllipseData {
  double a, b, phi;
  // t^2 = q11 x^2 + 2 q12 x y + q22 y^2
  double q11, q12, q22;
};

struct PolygonEdge {
  double start_angle;  // angle of the first vertex, in [0, 2pi)
  double nx, ny, offset;  // edge line: nx x + ny y = offset > 0
};

struct PolygonData {
  std::vector<Vec2> vertices;
  std::vector<PolygonEdge> edges;  // sorted by start_angle

  const PolygonEdge& edge_at(double theta) const {
    // Last edge with start_angle <= theta, wrapping to the final edge.
    auto it = std::upper_bound(edges.begin(), edges.end(), theta,
                               [](double t, const PolygonEdge& e) { return t < e.start_angle; });
    if (it == edges.begin()) return edges.back();
    return *std::prev(it);
  }
};

struct CosineData {
  std::vector<double> coeffs;
};

struct TransformedData {
  RadialShape base;
  Mat2 g;
  Mat2 g_inv;
};

PolygonData make_polygon(std::vector<Vec2> vertices) {
  PolygonData poly;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Vec2 v0 = vertices[i];
    const Vec2 v1 = vertices[(i + 1) % n];
    PolygonEdge e{};
    e.start_angle = wrap_angle(std::atan2(v0.y, v0.x));
    e.nx = v1.y - v0.y;
    e.ny = -(v1.x - v0.x);
    e.offset = e.nx * v0.x + e.ny * v0.y;
    if (!(e.offset > 0.0)) throw DomainError("polygon is not star-shaped about the origin");
    poly.edges.push_back(e);
  }
  std::sort(poly.edges.begin(), poly.edges.end(),
            [](const PolygonEdge& l, const PolygonEdge& r) { return l.start_angle < r.start_angle; });
  poly.vertices = std::move(vertices);
  return poly;
}

std::string format_number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

struct RadialShape::Impl {
  ShapeKind kind;
  std::variant<ConstantData, EllipseData, PolygonData, CosineData, TransformedData> data;
  double scale = 1.0;
  double r_min = 0.0;
  double r_max = 0.0;
  Smoothness smoothness = Smoothness::c1;
  int symmetry = 1;

  double base_radius(double theta) const {
    switch (kind) {
      case ShapeKind::constant:
        return std::get<ConstantData>(data).c;
      case ShapeKind::ellipse: {
        const auto& e = std::get<EllipseData>(data);
        const double cs = std::cos(theta - e.phi);
        const double sn = std::sin(theta - e.phi);
        return e.a * e.b / std::sqrt(e.b * e.b * cs * cs + e.a * e.a * sn * sn);
      }
      case ShapeKind::square:
      case ShapeKind::odd: {
        const auto& p = std::get<PolygonData>(data);
        const PolygonEdge& e = p.edge_at(wrap_angle(theta));
        return e.offset / (e.nx * std::cos(theta) + e.ny * std::sin(theta));
      }
      case ShapeKind::cosine_series: {
        const auto& c = std::get<CosineData>(data).coeffs;
        double acc = 0.0;
        for (std::size_t q = 0; q < c.size(); ++q)
          if (c[q] != 0.0) acc += c[q] * std::cos(static_cast<double>(q) * theta);
        return acc;
      }
      case ShapeKind::transformed: {
        const auto& t = std::get<TransformedData>(data);
        const Vec2 v = t.g_inv.apply({std::cos(theta), std::sin(theta)});
        return t.base.radius(std::atan2(v.y, v.x)) / std::hypot(v.x, v.y);
      }
    }
    return 0.0;
  }

  double base_dilation(double x, double y) const {
    switch (kind) {
      case ShapeKind::constant:
        return std::hypot(x, y) / std::get<ConstantData>(data).c;
      case ShapeKind::ellipse: {
        const auto& e = std::get<EllipseData>(data);
        return std::sqrt(e.q11 * x * x + 2.0 * e.q12 * x * y + e.q22 * y * y);
      }
      case ShapeKind::square:
      case ShapeKind::odd: {
        const auto& p = std::get<PolygonData>(data);
        const PolygonEdge& e = p.edge_at(wrap_angle(std::atan2(y, x)));
        return (e.nx * x + e.ny * y) / e.offset;
      }
      case ShapeKind::cosine_series:
        return std::hypot(x, y) / base_radius(std::atan2(y, x));
      case ShapeKind::transformed: {
        const auto& t = std::get<TransformedData>(data);
        const Vec2 v = t.g_inv.apply({x, y});
        return t.base.dilation(v.x, v.y);
      }
    }
    return 0.0;
  }

  double radius(double theta) const { return scale * base_radius(theta); }

  bool invariant_under(double shift) const {
    double worst = 0.0;
    for (int i = 0; i < kGridSize; ++i) {
      const double th = kTwoPi * i / kGridSize;
      worst = std::max(worst, std::abs(radius(th + shift) - radius(th)));
    }
    return worst <= kSymmetryTol * r_max;
  }

  int detect_symmetry() const {
    if (invariant_under(1.0)) return kContinuousSymmetry;
    for (int k = 64; k >= 2; --k)
      if (invariant_under(kTwoPi / k)) return k;
    return 1;
  }

  void grid_bounds(double& lo, double& hi) const {
    lo = std::numeric_limits<double>::infinity();
    hi = 0.0;
    for (int i = 0; i < kGridSize; ++i) {
      const double r = radius(kTwoPi * i / kGridSize);
      lo = std::min(lo, r);
      hi = std::max(hi, r);
    }
  }
};

RadialShape::RadialShape(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}

RadialShape RadialShape::circle(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("circle: radius must be positive");
  auto impl = std::make_shared<Impl>();
  impl->kind = ShapeKind::constant;
  impl->data = ConstantData{c};
  impl->r_min = impl->r_max = c;
  impl->symmetry = kContinuousSymmetry;
  return RadialShape(std::move(impl));
}

RadialShape RadialShape::ellipse(double a, double b, double phi) {
  if (!(b > 0.0) || !(a >= b) || !std::isfinite(a) || !std::isfinite(phi))
    throw DomainError("ellipse: requires a >= b > 0");
  auto impl = std::make_shared<Impl>();
  impl->kind = ShapeKind::ellipse;
  // Rotate p by -phi, then x'^2/a^2 + y'^2/b^2.
  const double cs = std::cos(phi);
  const double sn = std::sin(phi);
  const double ia = 1.0 / (a * a);
  const double ib = 1.0 / (b * b);
  EllipseData e{a, b, phi, cs * cs * ia + sn * sn * ib, cs * sn * (ia - ib), sn * sn * ia + cs * cs * ib};
  impl->data = e;
  impl->r_min = b;
  impl->r_max = a;
  impl->symmetry = (a == b) ? kContinuousSymmetry : 2;
  return RadialShape(std::move(impl));
}

RadialShape RadialShape::square() {
  auto impl = std::make_shared<Impl>();
  impl->kind = ShapeKind::square;
  impl->data = make_polygon({{1.0, -1.0}, {1.0, 1.0}, {-1.0, 1.0}, {-1.0, -1.0}});
  impl->r_min = 1.0;
  impl->r_max = std::sqrt(2.0);
  impl->smoothness = Smoothness::piecewise_smooth;
  impl->symmetry = 4;
  return RadialShape(std::move(impl));
}

RadialShape RadialShape::odd() {
  auto impl = std::make_shared<Impl>();
  impl->kind = ShapeKind::odd;
  // Boundary segments in counterclockwise order; the (1,0)-(2,1) edge is y = x - 1.
  impl->data = make_polygon(
      {{-1.0, -1.0}, {1.0, -1.0}, {1.0, 0.0}, {2.0, 1.0}, {1.0, 1.0}, {0.0, 0.5}, {-1.0, 1.0}});
  impl->r_max = std::sqrt(5.0);
  // Closest boundary point: foot of the perpendicular onto 2y - x = 1.
  impl->r_min = 1.0 / std::sqrt(5.0);
  impl->smoothness = Smoothness::piecewise_smooth;
  impl->symmetry = 1;
  return RadialShape(std::move(impl));
}

RadialShape RadialShape::cosine_series(std::vector<double> coeffs) {
  if (coeffs.empty()) throw DomainError("cosine series: no coefficients");
  for (double c : coeffs)
    if (!std::isfinite(c)) throw DomainError("cosine series: non-finite coefficient");
  auto impl = std::make_shared<Impl>();
  impl->kind = ShapeKind::cosine_series;
  double bound = 0.0;
  for (double c : coeffs) bound += std::abs(c);
  impl->data = CosineData{std::move(coeffs)};
  double lo = 0.0;
  double hi = 0.0;
  impl->grid_bounds(lo, hi);
  if (!(lo > 0.0)) throw DomainError("cosine series: r(theta) must be positive (grid minimum <= 0)");
  impl->r_min = lo;
  impl->r_max = std::min(bound, hi * (1.0 + 1e-3));
  impl->r_max = std::max(impl->r_max, hi);
  impl->smoothness = Smoothness::c1;
  impl->symmetry = impl->detect_symmetry();
  return RadialShape(std::move(impl));
}

RadialShape RadialShape::transformed(const RadialShape& base, const Mat2& g) {
  auto impl = std::make_shared<Impl>();
  impl->kind = ShapeKind::transformed;
  impl->data = TransformedData{base, g, g.inverse()};
  // |g x| lies between the extreme singular values times |x|.
  impl->r_max = g.norm2() * base.r_max();
  impl->r_min = g.min_singular() * base.r_min();
  impl->smoothness = base.smoothness();
  impl->symmetry = impl->detect_symmetry();
  return RadialShape(std::move(impl));
}

ShapeKind RadialShape::kind() const { return impl_->kind; }
double RadialShape::radius(double theta) const { return impl_->radius(theta); }
double RadialShape::dilation(double x, double y) const {
  if (x == 0.0 && y == 0.0) throw DomainError("dilation: the origin has no dilation time");
  return impl_->base_dilation(x, y) / impl_->scale;
}
double RadialShape::r_min() const { return impl_->scale * impl_->r_min; }
double RadialShape::r_max() const { return impl_->scale * impl_->r_max; }
Smoothness RadialShape::smoothness() const { return impl_->smoothness; }
int RadialShape::symmetry_order() const { return impl_->symmetry; }

bool RadialShape::has_symmetry(int k) const {
  if (k <= 1) return true;
  const int s = impl_->symmetry;
  return s == kContinuousSymmetry || s % k == 0;
}

RadialShape RadialShape::scaled(double c) const {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("scaled: factor must be positive");
  auto impl = std::make_shared<Impl>(*impl_);
  impl->scale *= c;
  return RadialShape(std::move(impl));
}

double RadialShape::scale_factor() const { return impl_->scale; }

std::string RadialShape::describe() const {
  std::string out;
  switch (impl_->kind) {
    case ShapeKind::constant:
      out = "circle:c=" + format_number(std::get<ConstantData>(impl_->data).c);
      break;
    case ShapeKind::ellipse: {
      const auto& e = std::get<EllipseData>(impl_->data);
      out = "ellipse:a=" + format_number(e.a) + ",b=" + format_number(e.b);
      if (e.phi != 0.0) out += ",phi=" + format_number(e.phi);
      break;
    }
    case ShapeKind::square: out = "square"; break;
    case ShapeKind::odd: out = "odd"; break;
    case ShapeKind::cosine_series: {
      const auto& c = std::get<CosineData>(impl_->data).coeffs;
      out = "cos:";
      bool first = true;
      for (std::size_t q = 0; q < c.size(); ++q) {
        if (c[q] == 0.0 && q != 0) continue;
        if (!first) out += ",";
        out += "c" + std::to_string(q) + "=" + format_number(c[q]);
        first = false;
      }
      break;
    }
    case ShapeKind::transformed: {
      const auto& t = std::get<TransformedData>(impl_->data);
      out = t.base.describe() + "@gl2=" + format_number(t.g.a()) + "," + format_number(t.g.b()) + "," +
            format_number(t.g.c()) + "," + format_number(t.g.d());
      break;
    }
  }
  if (impl_->scale != 1.0) out += "*" + format_number(impl_->scale);
  return out;
}

double RadialShape::circle_radius() const {
  if (impl_->kind != ShapeKind::constant) throw DomainError("circle_radius: not a circle");
  return impl_->scale * std::get<ConstantData>(impl_->data).c;
}

RadialShape::EllipseAxes RadialShape::ellipse_axes() const {
  if (impl_->kind == ShapeKind::constant) {
    const double c = circle_radius();
    return {c, c, 0.0};
  }
  if (impl_->kind != ShapeKind::ellipse) throw DomainError("ellipse_axes: not an ellipse");
  const auto& e = std::get<EllipseData>(impl_->data);
  return {impl_->scale * e.a, impl_->scale * e.b, e.phi};
}

const std::vector<Vec2>& RadialShape::polygon_vertices() const {
  if (impl_->kind != ShapeKind::square && impl_->kind != ShapeKind::odd)
    throw DomainError("polygon_vertices: not a polygon");
  return std::get<PolygonData>(impl_->data).vertices;
}

const std::vector<double>& RadialShape::cosine_coefficients() const {
  if (impl_->kind != ShapeKind::cosine_series) throw DomainError("cosine_coefficients: not a cosine series");
  return std::get<CosineData>(impl_->data).coeffs;
}

const RadialShape& RadialShape::base() const {
  if (impl_->kind != ShapeKind::transformed) throw DomainError("base: not a transformed shape");
  return std::get<TransformedData>(impl_->data).base;
}

const Mat2& RadialShape::matrix() const {
  if (impl_->kind != ShapeKind::transformed) throw DomainError("matrix: not a transformed shape");
  return std::get<TransformedData>(impl_->data).g;
}

std::string_view to_string(ShapeKind kind) {
  switch (kind) {
    case ShapeKind::constant: return "constant";
    case ShapeKind::ellipse: return "ellipse";
    case ShapeKind::square: return "square";
    case ShapeKind::odd: return "odd";
    case ShapeKind::cosine_series: return "cosine-series";
    case ShapeKind::transformed: return "transformed";
  }
  return "?";
}

std::string_view to_string(Smoothness s) {
  switch (s) {
    case Smoothness::c1: return "C1";
    case Smoothness::lipschitz: return "Lipschitz";
    case Smoothness::piecewise_smooth: return "piecewise-smooth";
  }
  return "?";
}

RadialShape act(const Mat2& g, const RadialShape& shape) { return RadialShape::transformed(shape, g); }

double area(const RadialShape& shape) {
  constexpr int n = 1 << 14;
  double acc = 0.0;
  for (int i = 0; i < n; ++i) {
    const double r = shape.radius(kTwoPi * i / n);
    acc += r * r;
  }
  return 0.5 * acc * kTwoPi / n;
}

}  // namespace hlawka

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "hlawka/shapes.hpp"
#include "hlawka/types.hpp"

using namespace hlawka;

namespace {

// Distance along the ray at angle theta to the first crossing with segment p-q, or -1.
double ray_segment_hit(double theta, Vec2 p, Vec2 q) {
  const double dx = std::cos(theta), dy = std::sin(theta);
  const double ex = q.x - p.x, ey = q.y - p.y;
  const double den = dx * (-ey) - dy * (-ex);
  if (std::abs(den) < 1e-15) return -1.0;
  const double t = (p.x * (-ey) - p.y * (-ex)) / den;
  const double u = (dx * p.y - dy * p.x) / den;
  if (t <= 0.0 || u < -1e-12 || u > 1.0 + 1e-12) return -1.0;
  return t;
}

double polygon_oracle(const std::vector<Vec2>& v, double theta) {
  double best = -1.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double t = ray_segment_hit(theta, v[i], v[(i + 1) % v.size()]);
    if (t > 0.0 && (best < 0.0 || t < best)) best = t;
  }
  return best;
}

Mat2 random_matrix(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  for (;;) {
    const double a = u(rng), b = u(rng), c = u(rng), d = u(rng);
    if (std::abs(a * d - b * c) >= 0.1) return {a, b, c, d};
  }
}

double grid_diff(const RadialShape& x, const RadialShape& y, int n) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double th = kTwoPi * i / n;
    worst = std::max(worst, std::abs(x(th) - y(th)));
  }
  return worst;
}

}  // namespace

TEST_CASE("square radial function") {
  const auto sq = RadialShape::square();
  CHECK(sq(0.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(sq(kPi / 4) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  for (int i = 0; i < 97; ++i) {
    const double th = 0.0137 + kTwoPi * i / 97;
    CHECK(sq(th) == doctest::Approx(1.0 / std::max(std::abs(std::cos(th)), std::abs(std::sin(th)))).epsilon(1e-13));
  }
  CHECK(sq.symmetry_order() == 4);
  CHECK(sq.smoothness() == Smoothness::piecewise_smooth);
}

TEST_CASE("ellipse radial function") {
  const auto e = RadialShape::ellipse(2.0, 1.0);
  CHECK(e(0.0) == doctest::Approx(2.0));
  CHECK(e(kPi / 2) == doctest::Approx(1.0));
  const auto er = RadialShape::ellipse(2.0, 1.0, 0.3);
  CHECK(er(0.3) == doctest::Approx(2.0));
  CHECK(e.symmetry_order() == 2);
  CHECK_THROWS_AS(RadialShape::ellipse(1.0, 2.0), DomainError);
}

TEST_CASE("odd shape against a segment-intersection oracle") {
  const auto odd = RadialShape::odd();
  CHECK(odd(std::atan(0.5)) == doctest::Approx(std::sqrt(5.0)).epsilon(1e-14));
  const auto& v = odd.polygon_vertices();
  CHECK(v.size() == 7);
  for (int i = 0; i < 1000; ++i) {
    const double th = 0.001 + kTwoPi * i / 1000;
    CHECK(odd(th) == doctest::Approx(polygon_oracle(v, th)).epsilon(1e-12));
  }
  CHECK(odd.symmetry_order() == 1);
  CHECK(area(odd) == doctest::Approx(4.0).epsilon(1e-6));
}

TEST_CASE("bounds and periodicity hold on the grid") {
  const std::vector<RadialShape> shapes = {RadialShape::circle(1.5), RadialShape::ellipse(1.3, 1.0, 0.4),
                                           RadialShape::square(), RadialShape::odd(),
                                           RadialShape::cosine_series({1.0, 0.0, 0.0, 0.0, 0.1}),
                                           act(Mat2(1.0, 0.5, -0.2, 0.8), RadialShape::odd())};
  for (const auto& s : shapes) {
    for (int i = 0; i < 4096; ++i) {
      const double r = s(kTwoPi * i / 4096);
      CHECK(r > 0.0);
      CHECK(r >= s.r_min() * (1 - 1e-12));
      CHECK(r <= s.r_max() * (1 + 1e-12));
    }
    CHECK(std::abs(s(0.0) - s(kTwoPi - 1e-9)) < 1e-6);
  }
}

TEST_CASE("cosine series positivity is enforced") {
  CHECK_THROWS_AS(RadialShape::cosine_series({1.0, 0.0, 1.2}), DomainError);
  const auto c = RadialShape::cosine_series({1.0, 0.0, 0.0, 0.0, 0.1});
  CHECK(c.symmetry_order() == 4);
  CHECK(c(0.0) == doctest::Approx(1.1));
}

TEST_CASE("dilation is the reciprocal of the radial function") {
  const auto odd = RadialShape::odd();
  CHECK(odd.dilation(2.0, 1.0) == 1.0);
  CHECK(RadialShape::square().dilation(2.0, 1.0) == 2.0);
  CHECK(RadialShape::ellipse(2.0, 1.0).dilation(2.0, 0.0) == doctest::Approx(1.0));
  const auto t = act(Mat2(1.2, 0.3, 0.1, 0.9), RadialShape::ellipse(1.5, 1.0, 0.2));
  for (int m = -3; m <= 3; ++m)
    for (int n = -3; n <= 3; ++n) {
      if (m == 0 && n == 0) continue;
      const double th = std::atan2(n, m);
      CHECK(t.dilation(m, n) == doctest::Approx(std::hypot(m, n) / t(th)).epsilon(1e-12));
    }
  CHECK_THROWS_AS(odd.dilation(0.0, 0.0), DomainError);
}

TEST_CASE("iwasawa decomposition") {
  auto c = iwasawa_decompose(Mat2::identity());
  CHECK(c.u == doctest::Approx(1.0));
  CHECK(c.x == doctest::Approx(0.0));
  CHECK(c.y == doctest::Approx(1.0));
  CHECK(c.theta == doctest::Approx(0.0));
  c = iwasawa_decompose(Mat2::kappa(0.7));
  CHECK(c.theta == doctest::Approx(0.7));
  CHECK(c.y == doctest::Approx(1.0));
  c = iwasawa_decompose(Mat2::scalar(2.0));
  CHECK(c.u == doctest::Approx(2.0));
  CHECK_THROWS_AS(iwasawa_decompose(Mat2(0.0, 1.0, 1.0, 0.0)), DomainError);

  std::mt19937_64 rng(11);
  for (int i = 0; i < 1000; ++i) {
    Mat2 g = random_matrix(rng);
    if (g.det() < 0) g = Mat2(g.b(), g.a(), g.d(), g.c());
    CHECK(max_entry_diff(iwasawa_compose(iwasawa_decompose(g)), g) <= 1e-12);
  }
}

TEST_CASE("cartan decomposition") {
  auto d = cartan_decompose(Mat2::diag(3.0, 2.0));
  CHECK(d.d1 == doctest::Approx(3.0));
  CHECK(d.d2 == doctest::Approx(2.0));
  d = cartan_decompose(Mat2(1.0, 1.0, 0.0, 1.0));
  CHECK(d.d1 == doctest::Approx(std::sqrt((3.0 + std::sqrt(5.0)) / 2.0)));
  CHECK(d.d1 * d.d2 == doctest::Approx(1.0));
  std::mt19937_64 rng(12);
  for (int i = 0; i < 1000; ++i) {
    Mat2 g = random_matrix(rng);
    if (g.det() < 0) g = Mat2(g.b(), g.a(), g.d(), g.c());
    const auto k = cartan_decompose(g);
    CHECK(k.d1 >= k.d2);
    CHECK(k.d2 > 0.0);
    CHECK(max_entry_diff(k.compose(), g) <= 1e-12);
  }
}

TEST_CASE("theta_g") {
  CHECK(theta_g(Mat2::identity(), 1.1) == doctest::Approx(1.1));
  // kappa is a clockwise turn; the counterclockwise rotation adds the angle.
  CHECK(theta_g(Mat2::rotation(0.4), 1.1) == doctest::Approx(1.5));
  CHECK(theta_g(Mat2::kappa(0.4), 1.1) == doctest::Approx(0.7));
  CHECK(theta_g(Mat2::diag(2.0, 1.0), kPi / 4) == doctest::Approx(std::atan(0.5)));

  std::mt19937_64 rng(13);
  for (int i = 0; i < 50; ++i) {
    const Mat2 g = random_matrix(rng), h = random_matrix(rng);
    for (int j = 0; j < 64; ++j) {
      const double phi = kTwoPi * j / 64;
      const double lhs = theta_g(g, theta_g(h, phi));
      const double rhs = theta_g(g * h, phi);
      const double diff = std::abs(wrap_angle(lhs - rhs + kPi) - kPi);
      CHECK(diff <= 1e-10);
    }
    const double psi = 2.0;
    CHECK(std::abs(wrap_angle(theta_g(g, invert_theta_g(g, psi)) - psi + kPi) - kPi) <= 1e-10);
  }
}

TEST_CASE("group action") {
  const auto circle = RadialShape::circle();
  const auto base = RadialShape::cosine_series({1.0, 0.1, 0.05, 0.0, 0.1});
  CHECK(grid_diff(act(Mat2::identity(), base), base, 256) <= 1e-12);
  CHECK(grid_diff(act(Mat2::diag(2.0, 1.0), circle), RadialShape::ellipse(2.0, 1.0), 256) <= 1e-10);

  const double psi = 0.37;
  const auto rotated = act(Mat2::kappa(psi), base);
  for (int i = 0; i < 256; ++i) {
    const double th = kTwoPi * i / 256;
    CHECK(rotated(th) == doctest::Approx(base(th + psi)).epsilon(1e-12));
  }

  // The definition: (g.r)(theta_g(phi)) = |g X(r(phi), phi)|, with phi solved by bisection.
  const Mat2 g(1.3, -0.4, 0.7, 0.6);
  const auto gr = act(g, base);
  for (int i = 0; i < 64; ++i) {
    const double psi_i = kTwoPi * i / 64;
    const double phi = invert_theta_g(g, psi_i);
    const Vec2 p = g.apply({base(phi) * std::cos(phi), base(phi) * std::sin(phi)});
    CHECK(gr(psi_i) == doctest::Approx(std::hypot(p.x, p.y)).epsilon(1e-9));
  }

  std::mt19937_64 rng(14);
  for (int i = 0; i < 100; ++i) {
    const Mat2 a = random_matrix(rng), b = random_matrix(rng);
    CHECK(grid_diff(act(a * b, base), act(a, act(b, base)), 64) <= 1e-9);
  }
}

TEST_CASE("scaling multiplies the radial function") {
  const auto s = RadialShape::odd().scaled(2.5);
  CHECK(s(std::atan(0.5)) == doctest::Approx(2.5 * std::sqrt(5.0)));
  CHECK(s.dilation(5.0, 2.5) == doctest::Approx(1.0));
  CHECK(s.kind() == ShapeKind::odd);
}

TEST_CASE("shape mini-language") {
  CHECK(parse_shape("circle:c=1.5").circle_radius() == 1.5);
  const auto e = parse_shape("ellipse:a=2,b=1,phi=0.3").ellipse_axes();
  CHECK(e.a == 2.0);
  CHECK(e.phi == 0.3);
  CHECK(parse_shape("square").kind() == ShapeKind::square);
  CHECK(parse_shape("odd").kind() == ShapeKind::odd);
  CHECK(parse_shape("cos:c0=1,c4=0.1").cosine_coefficients().size() == 5);
  const auto t = parse_shape("square@gl2=2,0,0,1");
  CHECK(t.kind() == ShapeKind::transformed);
  CHECK(t(0.0) == doctest::Approx(2.0));

  for (const char* spec : {"circle:c=1.5", "ellipse:a=2,b=1,phi=0.3", "square", "odd", "cos:c0=1,c4=0.1",
                           "ellipse:a=1.1,b=1@gl2=1,0.5,0,1", "square*2"}) {
    const auto s = parse_shape(spec);
    const auto again = parse_shape(s.describe());
    CHECK(grid_diff(s, again, 128) == 0.0);
  }

  try {
    parse_shape("ellipse:a=2,b=1,q=1");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.position() == 16);
  }
  CHECK_THROWS_AS(parse_shape("hexagon"), ParseError);
  CHECK_THROWS_AS(parse_shape("circle:c=-1"), ParseError);
  CHECK_THROWS_AS(parse_shape("circle:c=x"), ParseError);
  CHECK_THROWS_AS(parse_shape("square@gl2=1,1,1,1"), ParseError);
  CHECK_THROWS_AS(parse_shape(""), ParseError);
}

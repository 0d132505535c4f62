#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "hlawka/fourier.hpp"

using namespace hlawka;

namespace {

// (1/2pi) int |r^{2s}|^2 dtheta by a fine midpoint rule.
double mean_square(const RadialShape& shape, Complex s) {
  constexpr int n = 1 << 15;
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    const double r = shape.radius(kTwoPi * (j + 0.5) / n);
    acc += std::norm(std::exp(2.0 * s * std::log(r)));
  }
  return acc / n;
}

}  // namespace

TEST_CASE("circle coefficients") {
  const auto t = fourier_coeffs(RadialShape::circle(1.3), Complex(2.0, 0.5), 16);
  CHECK(std::abs(t.at(0) - std::exp(2.0 * Complex(2.0, 0.5) * std::log(1.3))) < 1e-14);
  for (int q = 1; q <= 16; ++q) {
    CHECK(std::abs(t.at(q)) < 1e-14);
    CHECK(std::abs(t.at(-q)) < 1e-14);
  }
}

TEST_CASE("cosine series read back at s = 1/2") {
  const auto t = fourier_coeffs(RadialShape::cosine_series({1.0, 0.0, 0.0, 0.0, 0.1}), 0.5, 12);
  CHECK(std::abs(t.at(0) - 1.0) < 1e-14);
  CHECK(std::abs(t.at(4) - 0.05) < 1e-14);
  CHECK(std::abs(t.at(-4) - 0.05) < 1e-14);
  for (int q : {1, 2, 3, 5, 8, -7}) CHECK(std::abs(t.at(q)) < 1e-14);
}

TEST_CASE("shift property") {
  const auto base = RadialShape::cosine_series({1.0, 0.1, 0.05, 0.02});
  const double phi = 0.7;
  const auto shifted = act(Mat2::kappa(phi), base);  // r(theta + phi)
  const Complex s(1.5, 0.3);
  const auto a = fourier_coeffs(base, s, 10);
  const auto b = fourier_coeffs(shifted, s, 10);
  for (int q = -10; q <= 10; ++q) CHECK(std::abs(b.at(q) - std::polar(1.0, q * phi) * a.at(q)) <= 1e-12);
}

TEST_CASE("symmetries of the table") {
  const auto e = RadialShape::ellipse(1.4, 1.0);
  const auto t = fourier_coeffs(e, 2.0, 20);
  for (int q = 0; q <= 20; ++q) {
    CHECK(std::abs(t.at(-q) - std::conj(t.at(q))) < 1e-14);
    CHECK(std::abs(t.at(-q) - t.at(q)) < 1e-14);  // even r
  }
  for (const auto& shape : {RadialShape::square(), RadialShape::circle(), RadialShape::cosine_series({1.0, 0.0, 0.0, 0.0, 0.2})}) {
    const auto f = fourier_coeffs(shape, 2.0, 24, 4096);
    for (int q = -24; q <= 24; ++q)
      if (q % 4 != 0) CHECK(std::abs(f.at(q)) <= 1e-10 * std::abs(f.at(0)));
  }
  // The odd shape has no 4-fold symmetry; its off-multiple coefficients are genuinely nonzero.
  const auto odd = fourier_coeffs(RadialShape::odd(), 2.0, 4, 4096);
  CHECK(std::abs(odd.at(1)) > 1e-3);
}

TEST_CASE("parseval and decay") {
  const Complex s(2.0, 0.0);
  for (const auto& shape : {RadialShape::ellipse(1.3, 1.0), RadialShape::cosine_series({1.0, 0.0, 0.0, 0.0, 0.1})}) {
    const auto t = fourier_coeffs(shape, s, 64);
    double energy = 0.0;
    for (const Complex& c : t.coeffs) energy += std::norm(c);
    const double ms = mean_square(shape, s);
    CHECK(energy <= ms + 1e-10);
    CHECK(energy >= ms - 1e-10);
    // Geometric decay of the multiples of 4.
    const double rho = std::abs(t.at(32)) / std::abs(t.at(16));
    CHECK(rho < 1e-2);
  }
  // Kink decay for the square: |c(q)| q^2 stays bounded.
  const auto sq = fourier_coeffs(RadialShape::square(), s, 256, 1 << 14);
  double worst = 0.0;
  for (int q = 4; q <= 256; q += 4) worst = std::max(worst, std::abs(sq.at(q)) * q * q);
  CHECK(worst < 50.0);
  const double slope = std::abs(sq.at(256)) / std::abs(sq.at(128));
  CHECK(slope > 0.15);
  CHECK(slope < 0.4);
  CHECK(!sq.warnings.empty());
}

TEST_CASE("ellipse coefficient closed form against quadrature") {
  const double c = 1.2;
  const double d = 1.0 - c;
  const Complex s(2.0, 0.0);
  const double a = std::sqrt(c);  // b = 1, c = a^2 / b^2
  const auto table = fourier_coeffs(RadialShape::ellipse(a, 1.0), s, 16, 1024);
  const Complex scale = std::exp(2.0 * s * std::log(a));  // r^{2s} = a^{2s} (c + d cos^2)^{-s}
  for (int q = 0; q <= 3; ++q) {
    const auto e = ellipse_coefficient(c, d, s, q, 200);
    CHECK(std::abs(scale * e.value - table.at(4 * q)) <= 1e-8);
    CHECK(e.error_estimate < 1e-14);
  }
  // Degenerate ellipse.
  CHECK(std::abs(ellipse_coefficient(1.7, 0.0, s, 0).value - std::pow(1.7, -2.0)) < 1e-15);
  CHECK(std::abs(ellipse_coefficient(1.7, 0.0, s, 2).value) == 0.0);
  CHECK_THROWS_AS(ellipse_coefficient(1.0, 0.6, s, 1), DivergenceError);
}

TEST_CASE("ellipse coefficient partial sums converge geometrically") {
  const double c = 1.2, d = -0.2;
  const Complex s = 2.0;
  const auto full = ellipse_coefficient(c, d, s, 1, 200).value;
  std::vector<double> errs;
  for (int k = 2; k <= 30; ++k) errs.push_back(std::abs(ellipse_coefficient(c, d, s, 1, k).value - full));
  // Successive error ratios approach |d/c| = 1/6.
  const double r = errs[10] / errs[9];
  CHECK(r == doctest::Approx(1.0 / 6.0).epsilon(0.1));
}

TEST_CASE("fourier csv") {
  std::ostringstream os;
  write_fourier_csv(os, fourier_coeffs(RadialShape::circle(), 1.0, 1, 16));
  CHECK(os.str().rfind("q,re,im\n-1,", 0) == 0);
}

#include "hlawka/mat2.hpp"

#include <algorithm>
#include <cmath>

#include "hlawka/types.hpp"

namespace hlawka {

Mat2::Mat2(double a, double b, double c, double d) : m_{a, b, c, d}, det_(a * d - b * c) {
  if (!std::isfinite(det_) || det_ == 0.0) throw DomainError("Mat2: matrix is singular or not finite");
}

Mat2 Mat2::kappa(double phi) {
  const double cs = std::cos(phi);
  const double sn = std::sin(phi);
  return {cs, sn, -sn, cs};
}

Mat2 Mat2::kappa_quarter(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0, 0.0, 1.0};
    case 1: return {0.0, 1.0, -1.0, 0.0};
    case 2: return {-1.0, 0.0, 0.0, -1.0};
    default: return {0.0, -1.0, 1.0, 0.0};
  }
}

Mat2 Mat2::inverse() const {
  return {m_[3] / det_, -m_[1] / det_, -m_[2] / det_, m_[0] / det_};
}

double Mat2::norm2() const {
  // Singular values of a 2x2 matrix from the half-sum/half-difference split.
  const double e = 0.5 * (m_[0] + m_[3]);
  const double f = 0.5 * (m_[0] - m_[3]);
  const double g = 0.5 * (m_[2] + m_[1]);
  const double h = 0.5 * (m_[2] - m_[1]);
  return std::hypot(e, h) + std::hypot(f, g);
}

double Mat2::min_singular() const { return std::abs(det_) / norm2(); }

Mat2 operator*(const Mat2& l, const Mat2& r) {
  return {l.m_[0] * r.m_[0] + l.m_[1] * r.m_[2], l.m_[0] * r.m_[1] + l.m_[1] * r.m_[3],
          l.m_[2] * r.m_[0] + l.m_[3] * r.m_[2], l.m_[2] * r.m_[1] + l.m_[3] * r.m_[3]};
}

double max_entry_diff(const Mat2& x, const Mat2& y) {
  double worst = 0.0;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) worst = std::max(worst, std::abs(x(i, j) - y(i, j)));
  return worst;
}

double wrap_angle(double theta) {
  double t = std::fmod(theta, kTwoPi);
  if (t < 0.0) t += kTwoPi;
  if (t >= kTwoPi) t = 0.0;
  return t;
}

IwasawaCoords iwasawa_decompose(const Mat2& g) {
  if (g.det() <= 0.0) throw DomainError("iwasawa_decompose: determinant must be positive");
  IwasawaCoords out;
  out.u = std::sqrt(g.det());
  const double cc = g.c();
  const double dd = g.d();
  out.y = g.det() / (cc * cc + dd * dd);
  // The bottom row is u y^{-1/2} (-sin theta, cos theta).
  out.theta = wrap_angle(std::atan2(dd, cc) - 0.5 * kPi);
  const double cs = std::cos(out.theta);
  const double sn = std::sin(out.theta);
  const double sqrt_y = (g.a() * cs + g.b() * sn) / out.u;
  out.x = sqrt_y * (-g.a() * sn + g.b() * cs) / out.u;
  return out;
}

Mat2 iwasawa_compose(const IwasawaCoords& k) {
  const double sy = std::sqrt(k.y);
  const Mat2 n{sy, k.x / sy, 0.0, 1.0 / sy};
  return Mat2::scalar(k.u) * n * Mat2::kappa(k.theta);
}

CartanDecomposition cartan_decompose(const Mat2& g) {
  if (g.det() <= 0.0) throw DomainError("cartan_decompose: determinant must be positive");
  // g = R(alpha) diag(s1, s2) R(beta) with R the counterclockwise rotation.
  const double e = 0.5 * (g.a() + g.d());
  const double f = 0.5 * (g.a() - g.d());
  const double gg = 0.5 * (g.c() + g.b());
  const double h = 0.5 * (g.c() - g.b());
  const double q = std::hypot(e, h);
  const double r = std::hypot(f, gg);
  const double a1 = std::atan2(gg, f);
  const double a2 = std::atan2(h, e);
  const double alpha = 0.5 * (a2 + a1);
  const double beta = 0.5 * (a2 - a1);
  CartanDecomposition out;
  out.d1 = q + r;
  out.d2 = q - r;
  // R(t) = kappa(-t)
  out.phi1 = wrap_angle(-alpha);
  out.phi2 = wrap_angle(-beta);
  return out;
}

double theta_g(const Mat2& g, double phi) {
  const Vec2 v = g.apply({std::cos(phi), std::sin(phi)});
  return wrap_angle(std::atan2(v.y, v.x));
}

double invert_theta_g(const Mat2& g, double psi, double tol) {
  const double a0 = theta_g(g, 0.0);
  const bool increasing = g.det() > 0.0;
  // Lifted offset from theta_g(0), monotone increasing on [0, 2pi).
  auto lifted = [&](double phi) {
    const double t = theta_g(g, phi);
    return increasing ? wrap_angle(t - a0) : wrap_angle(a0 - t);
  };
  const double target = increasing ? wrap_angle(psi - a0) : wrap_angle(a0 - psi);
  double lo = 0.0;
  double hi = kTwoPi;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    const double v = lifted(mid);
    // Near phi -> 2pi the wrapped lift can read 0; treat that as the top of the range.
    const double lv = (mid > kPi && v < 1e-3) ? v + kTwoPi : v;
    if (lv < target)
      lo = mid;
    else
      hi = mid;
  }
  return wrap_angle(0.5 * (lo + hi));
}

}  // namespace hlawka

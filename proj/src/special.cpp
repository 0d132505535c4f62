#include "hlawka/special.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <vector>

namespace hlawka {

namespace {

constexpr double kLanczosG = 607.0 / 128.0;
constexpr std::array<double, 15> kLanczosCoeffs = {
    0.99999999999999709182,     57.156235665862923517,      -59.597960355475491248,
    14.136097974741747174,      -0.49191381609762019978,    .33994649984811888699e-4,
    .46523628927048575665e-4,   -.98374475304879564677e-4,  .15808870322491248884e-3,
    -.21026444172410488319e-3,  .21743961811521264320e-3,   -.16431810653676389022e-3,
    .84418223983852743293e-4,   -.26190838401581408670e-4,  .36899182659531622704e-5};
constexpr double kLogSqrtTwoPi = 0.91893853320467274178032973640562;

// log Gamma(s) for Re s >= 1/2.
Complex lanczos_log_gamma(Complex s) {
  const Complex z = s - 1.0;
  Complex acc = kLanczosCoeffs[0];
  for (std::size_t k = 1; k < kLanczosCoeffs.size(); ++k) acc += kLanczosCoeffs[k] / (z + static_cast<double>(k));
  const Complex t = z + kLanczosG + 0.5;
  return kLogSqrtTwoPi + (z + 0.5) * std::log(t) - t + std::log(acc);
}

double nearest_nonpositive_integer_distance(Complex s) {
  if (s.real() > 0.5) return std::numeric_limits<double>::infinity();
  return std::abs(s - std::round(s.real()));
}

// n^-s, real arithmetic when s is real.
Complex inv_pow(double n, Complex s) {
  if (s.imag() == 0.0) return std::pow(n, -s.real());
  return std::exp(-s * std::log(n));
}

// Cohen-Villegas-Zagier weights for an alternating series of n terms: the accelerated
// sum is sum_k (-1)^k w_k a_k with w_k = 1 - d_k / d_n.
std::vector<double> cvz_weights(int n) {
  std::vector<double> d(static_cast<std::size_t>(n) + 1);
  double term = 1.0;
  double acc = 1.0;
  d[0] = acc;
  for (int i = 0; i < n; ++i) {
    term *= 4.0 * static_cast<double>(n + i) * static_cast<double>(n - i) /
            (static_cast<double>(2 * i + 1) * static_cast<double>(2 * i + 2));
    acc += term;
    d[static_cast<std::size_t>(i) + 1] = acc;
  }
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) w[static_cast<std::size_t>(k)] = (d[static_cast<std::size_t>(n)] - d[static_cast<std::size_t>(k)]) / d[static_cast<std::size_t>(n)];
  return w;
}

int cvz_terms(Complex s) {
  const double t = std::abs(s.imag());
  const double n = (36.8 + kPi * t / 2.0 + std::log1p(2.0 * t) + std::max(0.0, -s.real()) * 2.0) / 1.7627;
  return static_cast<int>(std::ceil(n)) + 4;
}

// sum (-1)^k (a k + b)^-s, accelerated.
Complex alternating_sum(Complex s, double a, double b) {
  const int n = cvz_terms(s);
  const auto w = cvz_weights(n);
  Complex acc = 0.0;
  for (int k = n - 1; k >= 0; --k) {
    const Complex term = w[static_cast<std::size_t>(k)] * inv_pow(a * k + b, s);
    acc += (k % 2 == 0) ? term : -term;
  }
  return acc;
}

// B_{2j} / (2j)! for j = 1..30, via B_{2j}/(2j)! = (-1)^{j+1} 2 zeta(2j) / (2 pi)^{2j}.
const std::array<double, 31>& bernoulli_ratios() {
  static const std::array<double, 31> table = [] {
    std::array<double, 31> out{};
    for (int j = 1; j <= 30; ++j) {
      const double p = 2.0 * j;
      constexpr int kCut = 100;
      double z = 0.0;
      for (int k = kCut; k >= 1; --k) z += std::pow(static_cast<double>(k), -p);
      // Euler-Maclaurin tail from kCut+1 on.
      const double K = kCut;
      z += std::pow(K, 1.0 - p) / (p - 1.0) - 0.5 * std::pow(K, -p) + p / 12.0 * std::pow(K, -p - 1.0);
      if (j == 1) z = kPi * kPi / 6.0;
      const double sign = (j % 2 == 1) ? 1.0 : -1.0;
      out[static_cast<std::size_t>(j)] = sign * 2.0 * z / std::pow(kTwoPi, p);
    }
    return out;
  }();
  return table;
}

Complex zeta_cvz(Complex s) {
  const Complex eta = alternating_sum(s, 1.0, 1.0);
  return eta / (1.0 - std::exp((1.0 - s) * std::log(2.0)));
}

void reject_zeta_pole(Complex s) {
  if (std::abs(s - 1.0) < 1e-14) throw PoleError("riemann_zeta: pole at s = 1");
}

}  // namespace

Complex cgamma(Complex s) {
  if (!is_finite(s)) throw DomainError("cgamma: argument is not finite");
  if (nearest_nonpositive_integer_distance(s) < 1e-14) throw PoleError("cgamma: pole at a nonpositive integer");
  if (s.real() >= 0.5) return require_finite(std::exp(lanczos_log_gamma(s)), "cgamma");
  return require_finite(kPi / (std::sin(kPi * s) * std::exp(lanczos_log_gamma(1.0 - s))), "cgamma");
}

Complex rgamma(Complex s) {
  if (!is_finite(s)) throw DomainError("rgamma: argument is not finite");
  if (s.real() >= 0.5) return require_finite(std::exp(-lanczos_log_gamma(s)), "rgamma");
  if (s.imag() == 0.0 && s.real() == std::round(s.real())) return 0.0;
  return require_finite(std::sin(kPi * s) * std::exp(lanczos_log_gamma(1.0 - s)) / kPi, "rgamma");
}

Complex riemann_zeta_em(Complex s) {
  reject_zeta_pole(s);
  const auto& b = bernoulli_ratios();
  const int n = 20 + static_cast<int>(std::ceil(std::abs(s)));
  const double N = n;
  Complex acc = 0.0;
  for (int k = n - 1; k >= 1; --k) acc += inv_pow(k, s);
  const Complex n_s = inv_pow(N, s);
  acc += N * n_s / (s - 1.0) + 0.5 * n_s;
  // poch = s (s+1) ... (s+2j-2), pw = N^{-s-2j+1}
  Complex poch = s;
  Complex pw = n_s / N;
  for (int j = 1; j <= 30; ++j) {
    acc += b[static_cast<std::size_t>(j)] * poch * pw;
    poch *= (s + (2.0 * j - 1.0)) * (s + 2.0 * j);
    pw /= N * N;
  }
  return require_finite(acc, "riemann_zeta_em");
}

Complex riemann_zeta_reflected(Complex s) {
  reject_zeta_pole(s);
  if (s.imag() == 0.0 && s.real() <= 0.0 && std::fmod(-s.real(), 2.0) == 0.0) {
    // zeta(0) and the trivial zeros.
    return s.real() == 0.0 ? -0.5 : 0.0;
  }
  const Complex one_minus = 1.0 - s;
  // zeta(1 - s) evaluated directly (never reflected again).
  const Complex inner = (std::abs(1.0 - std::exp(s * std::log(2.0))) < 1e-3) ? riemann_zeta_em(one_minus)
                                                                               : zeta_cvz(one_minus);
  const Complex factor = std::exp(s * std::log(2.0) + (s - 1.0) * std::log(kPi)) * std::sin(kPi * s / 2.0);
  return require_finite(factor * cgamma(one_minus) * inner, "riemann_zeta_reflected");
}

Complex riemann_zeta(Complex s) {
  if (!is_finite(s)) throw DomainError("riemann_zeta: argument is not finite");
  reject_zeta_pole(s);
  if (s.real() < 0.0) return riemann_zeta_reflected(s);
  if (std::abs(1.0 - std::exp((1.0 - s) * std::log(2.0))) < 1e-3) return riemann_zeta_em(s);
  return require_finite(zeta_cvz(s), "riemann_zeta");
}

Complex dirichlet_beta(Complex s) {
  if (!is_finite(s)) throw DomainError("dirichlet_beta: argument is not finite");
  if (s.real() >= 0.0) return require_finite(alternating_sum(s, 2.0, 1.0), "dirichlet_beta");
  // beta(s) = (pi/2)^(s-1) sin(pi (1-s)/2) Gamma(1-s) beta(1-s)
  const Complex w = 1.0 - s;
  if (s.imag() == 0.0 && std::fmod(-s.real(), 2.0) == 1.0) return 0.0;
  const Complex factor = std::exp((s - 1.0) * std::log(kPi / 2.0)) * std::sin(kPi * w / 2.0);
  return require_finite(factor * cgamma(w) * alternating_sum(w, 2.0, 1.0), "dirichlet_beta");
}

double exp_integral_e1(double x) {
  if (!(x > 0.0)) throw DomainError("exp_integral_e1: requires x > 0");
  if (x <= 1.0) {
    constexpr double kEulerGamma = 0.57721566490153286060651209008240;
    double term = 1.0;
    double acc = 0.0;
    for (int k = 1; k < 200; ++k) {
      term *= -x / k;
      const double add = -term / k;
      acc += add;
      if (std::abs(add) < 1e-17 * std::abs(acc)) break;
    }
    return -kEulerGamma - std::log(x) + acc;
  }
  // Lentz continued fraction for e^x E1(x).
  constexpr double kTiny = 1e-300;
  double b = x + 1.0;
  double c = 1.0 / kTiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < 1000; ++i) {
    const double an = -static_cast<double>(i) * i;
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < 1e-16) break;
  }
  return h * std::exp(-x);
}

Complex lower_incomplete_gamma(Complex s, double x) {
  if (!(x > 0.0)) throw DomainError("lower_incomplete_gamma: requires x > 0");
  if (nearest_nonpositive_integer_distance(s) < 1e-14) throw PoleError("lower_incomplete_gamma: s is a pole");
  // x^s e^-x sum_n x^n / (s (s+1) ... (s+n))
  Complex term = 1.0 / s;
  Complex acc = term;
  for (int n = 1; n < 100000; ++n) {
    term *= x / (s + static_cast<double>(n));
    acc += term;
    if (std::abs(term) < 1e-17 * std::abs(acc) && static_cast<double>(n) > x) break;
  }
  return require_finite(std::exp(s * std::log(x) - x) * acc, "lower_incomplete_gamma");
}

Complex upper_incomplete_gamma(Complex s, double x) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("upper_incomplete_gamma: requires finite x > 0");
  if (!is_finite(s)) throw DomainError("upper_incomplete_gamma: s is not finite");
  const Complex prefactor = std::exp(s * std::log(x) - x);
  if (x >= std::abs(s) + 2.0) {
    // Modified Lentz on the continued fraction Gamma(s,x) = x^s e^-x / (x+1-s - 1(1-s)/(x+3-s - ...)).
    constexpr double kTiny = 1e-300;
    Complex b = x + 1.0 - s;
    Complex c = 1.0 / kTiny;
    Complex d = 1.0 / b;
    Complex h = d;
    int i = 1;
    for (; i < 10000; ++i) {
      const Complex an = -static_cast<double>(i) * (static_cast<double>(i) - s);
      b += 2.0;
      d = an * d + b;
      if (std::abs(d) < kTiny) d = kTiny;
      c = b + an / c;
      if (std::abs(c) < kTiny) c = kTiny;
      d = 1.0 / d;
      const Complex del = d * c;
      h *= del;
      if (std::abs(del - 1.0) < 1e-16) break;
    }
    if (i == 10000) throw NumericError("upper_incomplete_gamma: continued fraction did not converge");
    return require_finite(prefactor * h, "upper_incomplete_gamma");
  }
  if (s.real() >= 0.5) return require_finite(cgamma(s) - lower_incomplete_gamma(s, x), "upper_incomplete_gamma");

  // Shift up to Re >= 1/2 (or to 0 for nonpositive integers) and recurse down with
  // Gamma(s, x) = (Gamma(s+1, x) - x^s e^-x) / s.
  const bool integer = s.imag() == 0.0 && s.real() == std::round(s.real());
  const int m = integer ? static_cast<int>(-s.real()) : static_cast<int>(std::ceil(0.5 - s.real()));
  Complex value = integer ? Complex(exp_integral_e1(x)) : upper_incomplete_gamma(s + static_cast<double>(m), x);
  for (int k = m - 1; k >= 0; --k) {
    const Complex sk = s + static_cast<double>(k);
    value = (value - std::exp(sk * std::log(x) - x)) / sk;
  }
  return require_finite(value, "upper_incomplete_gamma");
}

Complex lower_incomplete_gamma(Complex s, Complex z) {
  if (z.imag() == 0.0) return lower_incomplete_gamma(s, z.real());
  if (!(z.real() > 0.0) || !is_finite(z)) throw DomainError("lower_incomplete_gamma: requires Re z > 0");
  if (nearest_nonpositive_integer_distance(s) < 1e-14) throw PoleError("lower_incomplete_gamma: s is a pole");
  Complex term = 1.0 / s;
  Complex acc = term;
  const double r = std::abs(z);
  for (int n = 1; n < 100000; ++n) {
    term *= z / (s + static_cast<double>(n));
    acc += term;
    if (std::abs(term) < 1e-17 * std::abs(acc) && static_cast<double>(n) > r) break;
  }
  return require_finite(std::exp(s * std::log(z) - z) * acc, "lower_incomplete_gamma");
}

Complex upper_incomplete_gamma(Complex s, Complex z) {
  if (z.imag() == 0.0) return upper_incomplete_gamma(s, z.real());
  if (!(z.real() > 0.0) || !is_finite(z)) throw DomainError("upper_incomplete_gamma: requires finite z with Re z > 0");
  if (!is_finite(s)) throw DomainError("upper_incomplete_gamma: s is not finite");
  if (nearest_nonpositive_integer_distance(s) < 1e-14)
    throw DomainError("upper_incomplete_gamma: complex z with nonpositive integer s is not supported");
  const double r = std::abs(z);
  if (r >= std::abs(s) + 2.0) {
    constexpr double kTiny = 1e-300;
    Complex b = z + 1.0 - s;
    Complex c = 1.0 / kTiny;
    Complex d = 1.0 / b;
    Complex h = d;
    int i = 1;
    for (; i < 10000; ++i) {
      const Complex an = -static_cast<double>(i) * (static_cast<double>(i) - s);
      b += 2.0;
      d = an * d + b;
      if (std::abs(d) < kTiny) d = kTiny;
      c = b + an / c;
      if (std::abs(c) < kTiny) c = kTiny;
      d = 1.0 / d;
      const Complex del = d * c;
      h *= del;
      if (std::abs(del - 1.0) < 1e-16) break;
    }
    if (i == 10000) throw NumericError("upper_incomplete_gamma: continued fraction did not converge");
    return require_finite(std::exp(s * std::log(z) - z) * h, "upper_incomplete_gamma");
  }
  if (s.real() >= 0.5) return require_finite(cgamma(s) - lower_incomplete_gamma(s, z), "upper_incomplete_gamma");
  const int m = static_cast<int>(std::ceil(0.5 - s.real()));
  Complex value = upper_incomplete_gamma(s + static_cast<double>(m), z);
  for (int k = m - 1; k >= 0; --k) {
    const Complex sk = s + static_cast<double>(k);
    value = (value - std::exp(sk * std::log(z) - z)) / sk;
  }
  return require_finite(value, "upper_incomplete_gamma");
}

SeriesResult hyp2f1_partial(Complex a, Complex b, Complex c, Complex z, int n_terms) {
  if (!(std::abs(z) < 1.0)) throw DomainError("hyp2f1_partial: requires |z| < 1");
  if (n_terms <= 0) throw DomainError("hyp2f1_partial: n_terms must be positive");
  SeriesResult out;
  Complex term = 1.0;
  Complex acc = 1.0;
  double ratio = 0.0;
  int growing = 0;
  for (int n = 0; n + 1 < n_terms; ++n) {
    const Complex cn = c + static_cast<double>(n);
    if (std::abs(cn) < 1e-14) throw PoleError("hyp2f1_partial: c is a nonpositive integer in range");
    const Complex next = term * (a + static_cast<double>(n)) * (b + static_cast<double>(n)) / (cn * (n + 1.0)) * z;
    ratio = std::abs(term) > 0.0 ? std::abs(next) / std::abs(term) : 0.0;
    growing = (ratio >= 1.0) ? growing + 1 : 0;
    term = next;
    acc += term;
    if (term == 0.0) break;
  }
  if (growing >= 32) throw DivergenceError("hyp2f1_partial: term ratio persistently >= 1");
  out.value = require_finite(acc, "hyp2f1_partial");
  out.tail_estimate = (ratio < 1.0) ? std::abs(term) * ratio / (1.0 - ratio) : std::abs(term) * n_terms;
  return out;
}

}  // namespace hlawka

#include "hlawka/fourier.hpp"

#include <cmath>
#include <cstdio>
#include <ostream>

#include "hlawka/parallel.hpp"

namespace hlawka {

namespace {

std::vector<Complex> samples(const RadialShape& shape, Complex s, int n) {
  std::vector<Complex> f(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const double r = shape.radius(kTwoPi * j / n);
    f[static_cast<std::size_t>(j)] = std::exp(2.0 * s * std::log(r));
  }
  return f;
}

std::vector<Complex> trapezoid(const std::vector<Complex>& f, int q_max) {
  const int n = static_cast<int>(f.size());
  // e^{-2 pi i k / n}; indices reduced mod n so conjugate frequencies see identical twiddles.
  std::vector<Complex> roots(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) roots[static_cast<std::size_t>(k)] = std::polar(1.0, -kTwoPi * k / n);
  std::vector<Complex> out(static_cast<std::size_t>(2 * q_max + 1));
  parallel_chunks(out.size(), [&](std::size_t idx) {
    const int q = static_cast<int>(idx) - q_max;
    const long qm = ((q % n) + n) % n;
    std::vector<Complex> terms(static_cast<std::size_t>(n));
    for (int j = 0; j < n; ++j)
      terms[static_cast<std::size_t>(j)] = f[static_cast<std::size_t>(j)] * roots[static_cast<std::size_t>((qm * j) % n)];
    out[idx] = pairwise_sum(terms) / static_cast<double>(n);
  });
  return out;
}

}  // namespace

Complex FourierTable::at(int q) const {
  if (q < -q_max || q > q_max) throw DomainError("FourierTable::at: |q| exceeds q_max");
  return coeffs[static_cast<std::size_t>(q + q_max)];
}

double FourierTable::abs_sum() const {
  double acc = 0.0;
  for (const Complex& c : coeffs) acc += std::abs(c);
  return acc;
}

FourierTable fourier_coeffs(const RadialShape& shape, Complex s, int q_max, int n) {
  if (q_max < 0) throw DomainError("fourier_coeffs: q_max must be nonnegative");
  if (n == 0) {
    n = 1024;
    while (n < 8 * q_max) n *= 2;
  }
  if (n < 8 * q_max || (n & (n - 1)) != 0) throw DomainError("fourier_coeffs: N must be a power of two >= 8 q_max");
  FourierTable t;
  t.s = s;
  t.q_max = q_max;
  t.n = n;
  t.coeffs = trapezoid(samples(shape, s, n), q_max);
  const auto fine = trapezoid(samples(shape, s, 2 * n), q_max);
  for (std::size_t i = 0; i < fine.size(); ++i) t.error_estimate = std::max(t.error_estimate, std::abs(fine[i] - t.coeffs[i]));
  if (t.error_estimate > 1e-8) {
    char buf[128];
    std::snprintf(buf, sizeof(buf), "quadrature doubling difference %.3g exceeds 1e-8 (kinked shape?)", t.error_estimate);
    t.warnings.emplace_back(buf);
  }
  return t;
}

EvalResult ellipse_coefficient(double cparam, double dparam, Complex s, int q, int k_max) {
  if (!(cparam > 0.0) || !std::isfinite(dparam)) throw DomainError("ellipse_coefficient: requires c > 0");
  if (q < 0) throw DomainError("ellipse_coefficient: q must be nonnegative");
  if (!(std::abs(2.0 * dparam / cparam) < 1.0)) throw DivergenceError("ellipse_coefficient: requires |2d/c| < 1");
  if (k_max < 2 * q) throw DomainError("ellipse_coefficient: k_max must be at least 2q");
  EvalResult out;
  const double ratio = dparam / cparam;
  // binom(-s, k) ratio^k, built up to k = 2q by the product form.
  Complex b = 1.0;
  for (int k = 0; k < 2 * q; ++k) b *= (-s - static_cast<double>(k)) / (k + 1.0) * ratio;
  double t = std::pow(4.0, -2.0 * q);  // binom(2k, k - 2q) / 4^k at k = 2q
  Complex acc = 0.0;
  Complex term = b * t;
  double last_ratio = 0.0;
  int k = 2 * q;
  for (; k <= k_max; ++k) {
    term = b * t;
    acc += term;
    const Complex b_next = b * (-s - static_cast<double>(k)) / (k + 1.0) * ratio;
    const double t_next = t * (2.0 * k + 2.0) * (2.0 * k + 1.0) /
                          (4.0 * (k + 1.0 - 2.0 * q) * (k + 1.0 + 2.0 * q));
    const Complex next = b_next * t_next;
    last_ratio = std::abs(term) > 0.0 ? std::abs(next) / std::abs(term) : 0.0;
    b = b_next;
    t = t_next;
    if (next == 0.0) break;
  }
  const Complex prefactor = std::exp(-s * std::log(cparam));
  out.value = require_finite(prefactor * acc, "ellipse_coefficient");
  const double next_mag = std::abs(b * t);
  out.error_estimate = last_ratio < 1.0 ? std::abs(prefactor) * next_mag / (1.0 - last_ratio) : std::abs(prefactor) * next_mag * k_max;
  out.truncation = {{"q", 4.0 * q}, {"k_max", static_cast<double>(k_max)}, {"term_ratio", last_ratio}};
  if (last_ratio >= 0.99) out.warnings.emplace_back("term ratio near 1: convergence stalled");
  return out;
}

void write_fourier_csv(std::ostream& out, const FourierTable& table) {
  out << "q,re,im\n";
  char buf[96];
  for (int q = -table.q_max; q <= table.q_max; ++q) {
    const Complex c = table.at(q);
    std::snprintf(buf, sizeof(buf), "%d,%.15g,%.15g\n", q, c.real(), c.imag());
    out << buf;
  }
}

}  // namespace hlawka

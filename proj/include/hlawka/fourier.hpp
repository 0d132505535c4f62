#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hlawka/shapes.hpp"
#include "hlawka/types.hpp"

namespace hlawka {

// Fourier coefficients c(q) = (1/2pi) int r(theta)^{2s} e^{-iq theta} dtheta for |q| <= q_max.
struct FourierTable {
  Complex s{};
  int q_max = 0;
  int n = 0;                      // trapezoid grid size
  std::vector<Complex> coeffs;    // index q + q_max
  double error_estimate = 0.0;    // max_q |c_N(q) - c_2N(q)|
  std::vector<std::string> warnings;

  Complex at(int q) const;
  // Sum of |c(q)| over the table, the absolute-summability witness.
  double abs_sum() const;
};

// Trapezoid rule on N points; N = 0 picks the smallest power of two >= max(8 q_max, 1024).
// r^{2s} is formed as exp(2s ln r).
FourierTable fourier_coeffs(const RadialShape& shape, Complex s, int q_max, int n = 0);

// Fourier coefficient c(4q) of (c + d cos^2 theta)^{-s}:
//   c^{-s} sum_{k >= 2q} binom(-s, k) (d/c)^k binom(2k, k - 2q) / 4^k,
// truncated at k_max. Requires |2d/c| < 1. The cosine-basis coefficient is twice this for q > 0.
EvalResult ellipse_coefficient(double cparam, double dparam, Complex s, int q, int k_max = 200);

// Rows q,re,im; 15 significant digits.
void write_fourier_csv(std::ostream& out, const FourierTable& table);

}  // namespace hlawka

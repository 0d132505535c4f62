#pragma once

#include "hlawka/types.hpp"

namespace hlawka {

// Complex Gamma by the Lanczos approximation (g = 607/128), reflected for Re s < 1/2.
// Throws PoleError within 1e-14 of a nonpositive integer.
Complex cgamma(Complex s);

// 1/Gamma(s); entire, zero at the nonpositive integers.
Complex rgamma(Complex s);

// Riemann zeta for s != 1. Alternating-series acceleration of eta(s) for Re s >= 0, the
// functional equation for Re s < 0, and Euler-Maclaurin where 1 - 2^(1-s) is nearly zero.
Complex riemann_zeta(Complex s);

// Independent routes used for cross-checks.
Complex riemann_zeta_reflected(Complex s);  // 2^s pi^(s-1) sin(pi s/2) Gamma(1-s) zeta(1-s)
Complex riemann_zeta_em(Complex s);         // Euler-Maclaurin, 30 Bernoulli terms

// Dirichlet beta, sum (-1)^k (2k+1)^-s.
Complex dirichlet_beta(Complex s);

// Upper incomplete Gamma(s, x) for x > 0: Lentz continued fraction when x >= |s| + 2,
// otherwise Gamma(s) minus the lower series, shifted up and recursed down for Re s < 1/2.
Complex upper_incomplete_gamma(Complex s, double x);

// Lower incomplete gamma(s, x) by its power series; s not a nonpositive integer.
Complex lower_incomplete_gamma(Complex s, double x);

// Principal-branch continuations to complex z with Re z > 0. Real z defers to the real versions;
// otherwise s must not be a nonpositive integer.
Complex upper_incomplete_gamma(Complex s, Complex z);
Complex lower_incomplete_gamma(Complex s, Complex z);

// Exponential integral E1(x) = Gamma(0, x), x > 0.
double exp_integral_e1(double x);

struct SeriesResult {
  Complex value{};
  double tail_estimate = 0.0;
};

// Partial sum of 2F1(a, b; c; z) over n < n_terms with a geometric tail estimate.
// Requires |z| < 1; throws DivergenceError if the term ratio stays >= 1.
SeriesResult hyp2f1_partial(Complex a, Complex b, Complex c, Complex z, int n_terms);

}  // namespace hlawka

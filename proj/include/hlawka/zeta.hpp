#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hlawka/lattice.hpp"
#include "hlawka/shapes.hpp"
#include "hlawka/types.hpp"

namespace hlawka {

// Positive-definite binary form Q(m, n) = u11 m^2 + 2 u12 m n + u22 n^2.
class QuadForm2 {
 public:
  QuadForm2(double u11, double u12, double u22);
  static QuadForm2 identity() { return {1.0, 0.0, 1.0}; }
  // g^T g.
  static QuadForm2 gram(const Mat2& g);

  double u11() const { return u11_; }
  double u12() const { return u12_; }
  double u22() const { return u22_; }
  double det() const { return det_; }
  double operator()(double m, double n) const { return u11_ * m * m + 2.0 * u12_ * m * n + u22_ * n * n; }

  QuadForm2 inverse() const;
  QuadForm2 scaled(double c) const { return {c * u11_, c * u12_, c * u22_}; }
  double lambda_min() const;
  double lambda_max() const;
  double condition_number() const { return lambda_max() / lambda_min(); }

 private:
  double u11_, u12_, u22_, det_;
};

// The form u with t(p)^2 = p^T u p, for shapes whose dilation is quadratic
// (circles, ellipses, their images under GL(2,R), and scalings of those).
std::optional<QuadForm2> quadratic_form(const RadialShape& shape);

// Form of the ellipse with semi-axes a, b rotated by phi: kappa_phi^T diag(a^-2, b^-2) kappa_phi.
QuadForm2 ellipse_form(double a, double b, double phi = 0.0);

// Upper bound on the number of lattice points a direct sum may visit.
std::int64_t enumeration_cap();
void set_enumeration_cap(std::int64_t cap);

// Z_r(s) = sum over 0 < |p| <= radius of t(p)^{-2s}. Tail estimate by integral comparison,
// 2 pi r_max^{2 sigma} (R - 2)^{2 - 2 sigma} / (2 sigma - 2). With tail_corrected the integral
// R^{2-2s}/(2s-2) int r^{2s} dtheta is added and the estimate drops to the lattice discrepancy.
EvalResult hlawka_direct(const RadialShape& shape, Complex s, double radius, bool tail_corrected = false);

// sum_k a_k t_k^{-2s} over the spectrum.
EvalResult hlawka_from_spectrum(const Spectrum& spectrum, Complex s);

// sum over 0 < |x| <= radius of Q(x)^{-s}; tail handled as in hlawka_direct.
EvalResult epstein_direct(const QuadForm2& u, Complex s, double radius, bool tail_corrected = false);

// Completed Lambda(u, s) = pi^{-s} Gamma(s) E(u, s) by theta splitting at t = split:
//   - split^s/s - det^{-1/2} split^{s-1}/(1-s)
//   + sum [(pi Q)^{-s} Gamma(s, pi Q split) + det^{-1/2} (pi Q*)^{s-1} Gamma(1-s, pi Q*/split)].
// Q* is the inverse form. Any split > 0 gives the same function; different splits give
// independent evaluations.
EvalResult epstein_completed(const QuadForm2& u, Complex s, double split = 1.0);

// E(u, s) = Lambda(u, s) pi^s / Gamma(s). PoleError within 1e-8 of s = 0, 1.
EvalResult epstein_continued(const QuadForm2& u, Complex s, double split = 1.0);

// sum over 0 < |p| <= radius of (-i)^q e^{iq(theta(p) + phi)} |p|^{-2s}, with the angle of
// each term taken from the rotated vector p kappa_phi. Odd q and q = 2 mod 4 vanish
// identically: VanishingError unless reject_vanishing is false, in which case the raw sum is
// returned.
EvalResult eisenstein_fq_truncated(int q, double phi, Complex s, double radius, bool reject_vanishing = true);

// One pass over the disc for q = 0, 4, 8, ..., q_max (phi = 0).
std::vector<EvalResult> eisenstein_fq_truncated_batch(int q_max, Complex s, double radius);

// Continuation of E#.f_q(I, s) for q >= 4, q = 0 mod 4, through the harmonic theta series of
// P(m, n) = (m + in)^q at s' = s + q/2. Entire in s.
EvalResult eisenstein_fq_continued(int q, Complex s, double split = 1.0);

// E(z, s) = (2 zeta(2s))^{-1} sum y^s / |mz + n|^{2s}: direct sum for Re s > 1 when
// radius > 0, otherwise through epstein_continued.
EvalResult classical_eisenstein(Complex z, Complex s, double radius = 0.0);

enum class ReconstructMode { truncated, continued };

// Z_r(s) = sum over multiples of 4 with |q| <= q_max of c(q) E#.f_q(I, s), c(q) the Fourier
// coefficients of r^{2s}. Truncated mode sums E#.f_q over the disc of the given radius.
EvalResult reconstruct_hlawka(const RadialShape& shape, Complex s, int q_max, ReconstructMode mode,
                              double radius = 3000.0);

}  // namespace hlawka

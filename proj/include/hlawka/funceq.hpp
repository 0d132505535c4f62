#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "hlawka/lattice.hpp"
#include "hlawka/shapes.hpp"
#include "hlawka/types.hpp"

namespace hlawka {

struct SampleResidual {
  Complex s{};
  Complex lhs{};
  Complex rhs{};
  double abs_residual = 0.0;
  double rel_residual = 0.0;  // |lhs - rhs| / max(|lhs|, |rhs|, 1e-300)
  double allowed = -1.0;      // absolute bound replacing the relative tolerance when >= 0
};

// Outcome of checking an identity at a list of sample points. When gated is false the
// report is exploratory and pass carries no claim.
struct CheckReport {
  std::string identity;
  std::vector<SampleResidual> samples;
  double tolerance = 0.0;
  bool gated = true;
  bool pass = false;
  Truncation truncation;
  std::vector<std::pair<std::string, double>> statistics;
  std::vector<std::string> notes;

  double max_rel_residual() const;
};

// pass := gated, at least one sample, and every sample within its allowance (absolute when
// allowed >= 0, else relative against tolerance).
void finalize(CheckReport& report);

// Both sides of each check come from separate evaluations: the two sides use different theta
// splits (1 and kDualSplit) or different code paths, so agreement is not an algebraic identity.
inline constexpr double kDualSplit = 1.6;

// c^{-2s} Gamma(s) pi^{-s} Z(s) = c^{-2(1-s)} Gamma(1-s) pi^{-(1-s)} Z(1-s), Z the circle of radius c.
CheckReport check_circle_fe(double c, const std::vector<Complex>& samples);

// Lambda(u, s) = det(u)^{-1/2} Lambda(u^{-1}, 1 - s).
CheckReport check_epstein_fe(double u11, double u12, double u22, const std::vector<Complex>& samples);

// |hlawka_direct(square, s) - 8 zeta(2s - 1)| <= tail estimate + 1e-8 for Re s > 1.
CheckReport check_square_closed_form(const std::vector<Complex>& samples, double radius);

// pi^{-s} Gamma(s) E#_q(s) = pi^{-(1-s)} Gamma(1-s) Gamma(s)^2 (-i)^q / (Gamma(s+q/2) Gamma(s-q/2)) E#_q(1-s)
// for q = 0 mod 4. Other q throw VanishingError (the components are identically zero).
CheckReport check_eq7(int q, const std::vector<Complex>& samples);

// Ellipse functional equation pi^{-s} Gamma(s) Z(r, s) = pi^{-(1-s)} Gamma(1-s) ab Z(r*, 1-s), r* the
// ellipse with semi-axes 1/a, 1/b in the same orientation. The printed (ab)^{-1/2} factor is carried
// along as the statistic "printed_factor_rel_residual" and does not gate.
CheckReport check_eq8_ellipse_fe(double a, double b, double phi, const std::vector<Complex>& samples);

enum class Eq10Reading { j_form, k_form };
enum class Eq10Exponent { three_halves, five_halves };  // (ab)^{2s-3/2} or (ab)^{2s-5/2}

// Literal evaluation of the coefficient identity for the 4q-th cosine coefficients of an ellipse
// with semi-axes a, b. Report only (gated = false).
CheckReport check_eq10(double a, double b, int q, const std::vector<Complex>& samples, Eq10Reading reading,
                       Eq10Exponent exponent);

// All four (reading, exponent) combinations.
std::vector<CheckReport> eq10_report(double a, double b, int q, const std::vector<Complex>& samples);

// Square and odd spectra agree entry by entry up to t_max, and so do their spectral Z values.
// Statistics include the vertex counts, perimeters and areas that separate the two shapes.
CheckReport check_odd_vs_square(double t_max, const std::vector<Complex>& samples);

struct PerronRow {
  double T;
  double residual;  // approx(T) - target
  double envelope;  // max |residual| over [0.75 T, T]
};

struct PerronResult {
  double approx = 0.0;
  double target = 0.0;  // A'(x): boundary points at half weight
  double x = 0.0, sigma = 0.0, T = 0.0;
  std::vector<PerronRow> study;  // every 10 units of T
  std::vector<std::string> warnings;
};

// (1/pi) int_0^T Re[Z(sigma + it) x^{2(sigma + it)} / (sigma + it)] dt by composite Simpson with
// panels <= 0.05, Z summed over a spectrum with t_max = max(2x, radius).
PerronResult perron_count_approx(const RadialShape& shape, double x, double sigma, double T, double radius = 0.0);
void write_perron_csv(std::ostream& out, const PerronResult& result);

// lim (s - 1) Z_r(s). Quadratic shapes through epstein_continued at 1 +- 1e-4 (symmetric mean);
// square and odd through 8 zeta(2s - 1). Other kinds throw DomainError.
EvalResult residue_at_one(const RadialShape& shape);

// Z_r(s) anywhere off the poles for shapes with a known continuation (quadratic forms via
// epstein_continued, square and odd via 8 zeta(2s - 1)). DomainError otherwise.
EvalResult hlawka_continued(const RadialShape& shape, Complex s);

// f(s) = A^{1-s} prod Gamma(alpha_i (1-s) + mu_i) / (B^s prod Gamma(beta_j s + omega_j)) f*(1-s).
struct RegularFEForm {
  Complex A{1.0, 0.0}, B{1.0, 0.0};
  std::vector<std::pair<double, Complex>> numerator;    // (alpha_i, mu_i)
  std::vector<std::pair<double, Complex>> denominator;  // (beta_j, omega_j)
};

// Residuals of a candidate regular functional equation between Z_r and Z_{r*}. Report only.
CheckReport probe_regular_fe(const RegularFEForm& form, const RadialShape& shape, const RadialShape& dual,
                             const std::vector<Complex>& samples);

}  // namespace hlawka

#include "hlawka/zeta.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>

#include "hlawka/fourier.hpp"
#include "hlawka/parallel.hpp"
#include "hlawka/special.hpp"

namespace hlawka {

namespace {

constexpr double kPoleTol = 1e-8;
constexpr double kMaxCondition = 1e8;
constexpr int kAngularGrid = 4096;

std::atomic<std::int64_t>& cap_storage() {
  static std::atomic<std::int64_t> cap{500'000'000};
  return cap;
}

void check_radius(double radius, const char* what) {
  if (!(radius >= 10.0) || !std::isfinite(radius)) throw DomainError(std::string(what) + ": radius must be >= 10");
  const double points = kPi * radius * radius;
  if (points > static_cast<double>(enumeration_cap()))
    throw DomainError(std::string(what) + ": radius exceeds the enumeration cap");
}

void require_convergent(Complex s, const char* what) {
  if (!is_finite(s)) throw DomainError(std::string(what) + ": s is not finite");
  if (!(s.real() > 1.0)) throw DomainError(std::string(what) + ": requires Re(s) > 1");
}

// x^{-s} for x > 0, real arithmetic when s is real.
inline Complex pow_neg(double x, Complex s) {
  if (s.imag() == 0.0) return std::pow(x, -s.real());
  return std::exp(-s * std::log(x));
}

// Exact (-i)^q.
Complex minus_i_pow(int q) {
  switch (((q % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, -1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, 1.0};
  }
}

Complex i_pow(int q) { return minus_i_pow(-q); }

// z^k by repeated multiplication; for k < 0 uses conj(z)^|k|, valid for |z| = 1.
Complex unit_power(Complex z, int k) {
  if (k < 0) {
    z = std::conj(z);
    k = -k;
  }
  Complex acc = 1.0;
  for (int i = 0; i < k; ++i) acc *= z;
  return acc;
}

// All nonzero (m, n) with Q(m, n) <= c, row by row.
template <typename Fn>
void for_each_in_ellipse(const QuadForm2& u, double c, Fn&& fn) {
  const double m_extent = std::sqrt(c * u.u22() / u.det());
  const auto m_max = static_cast<std::int64_t>(std::floor(m_extent)) + 1;
  for (std::int64_t m = -m_max; m <= m_max; ++m) {
    const double md = static_cast<double>(m);
    const double disc = u.u12() * u.u12() * md * md - u.u22() * (u.u11() * md * md - c);
    if (disc < 0.0) continue;
    const double root = std::sqrt(disc);
    const auto lo = static_cast<std::int64_t>(std::floor((-u.u12() * md - root) / u.u22())) - 1;
    const auto hi = static_cast<std::int64_t>(std::ceil((-u.u12() * md + root) / u.u22())) + 1;
    for (std::int64_t n = lo; n <= hi; ++n) {
      if (m == 0 && n == 0) continue;
      const double nd = static_cast<double>(n);
      const double qv = u(md, nd);
      if (qv <= c) fn(md, nd, qv);
    }
  }
}

// Cutoff X with X^p e^{-X} below eps.
double gaussian_cutoff(double p, double eps) {
  double x = 10.0;
  while (p * std::log(x) - x > std::log(eps)) x += 0.5;
  return x;
}

// Target for dropped theta terms, relative to the expected size e^{-pi |t| / 2} of Lambda.
double theta_epsilon(Complex s) { return 1e-18 * std::exp(-kPi * std::abs(s.imag()) / 2.0); }

// Argument of the complex split point. Turning the theta ray toward sign(Im s) i keeps the terms
// near the size of Lambda instead of O(1) for large |Im s|.
double split_angle(Complex s) { return (kPi / 3.0) * std::clamp(s.imag() / 3.0, -1.0, 1.0); }

// 1/(2s - 2) int_0^{2pi} f(theta) dtheta R^{2 - 2s}, the continuum part of a dropped tail.
Complex continuum_tail(const std::function<Complex(double)>& angular, Complex s, double radius) {
  std::vector<Complex> v(kAngularGrid);
  for (int j = 0; j < kAngularGrid; ++j) v[static_cast<std::size_t>(j)] = angular(kTwoPi * j / kAngularGrid);
  const Complex integral = pairwise_sum(v) * (kTwoPi / kAngularGrid);
  return integral * std::exp((2.0 - 2.0 * s) * std::log(radius)) / (2.0 * s - 2.0);
}

// Integral comparison. Each unit cell around a point beyond the radius lies outside the disc of
// radius R - 1/sqrt2, so R - 2 gives a strict bound rather than the leading asymptotic.
double raw_tail_bound(double scale_sigma, double sigma, double radius) {
  return kTwoPi * scale_sigma * std::pow(radius - 2.0, 2.0 - 2.0 * sigma) / (2.0 * sigma - 2.0);
}

double corrected_tail_bound(double scale_sigma, Complex s, double radius) {
  return 10.0 * (1.0 + std::abs(s)) * scale_sigma * std::pow(radius, 1.0 - 2.0 * s.real());
}

// Harmonic sums for the batch evaluator.
constexpr int kMaxBatch = 33;
struct Harmonics {
  std::array<Complex, kMaxBatch> v{};
  int count = 0;
  Harmonics& operator+=(const Harmonics& o) {
    count = std::max(count, o.count);
    for (int i = 0; i < o.count; ++i) v[static_cast<std::size_t>(i)] += o.v[static_cast<std::size_t>(i)];
    return *this;
  }
  friend Harmonics operator+(Harmonics a, const Harmonics& b) { return a += b; }
};

}  // namespace

QuadForm2::QuadForm2(double u11, double u12, double u22) : u11_(u11), u12_(u12), u22_(u22), det_(u11 * u22 - u12 * u12) {
  if (!std::isfinite(u11) || !std::isfinite(u12) || !std::isfinite(u22)) throw DomainError("QuadForm2: entries must be finite");
  if (!(u11 > 0.0) || !(det_ > 0.0)) throw DomainError("QuadForm2: form is not positive definite");
}

QuadForm2 QuadForm2::gram(const Mat2& g) {
  return {g.a() * g.a() + g.c() * g.c(), g.a() * g.b() + g.c() * g.d(), g.b() * g.b() + g.d() * g.d()};
}

QuadForm2 QuadForm2::inverse() const {
  if (condition_number() > kMaxCondition) throw DomainError("QuadForm2: condition number exceeds 1e8");
  return {u22_ / det_, -u12_ / det_, u11_ / det_};
}

double QuadForm2::lambda_max() const {
  const double h = 0.5 * (u11_ + u22_);
  return h + std::hypot(0.5 * (u11_ - u22_), u12_);
}

double QuadForm2::lambda_min() const { return det_ / lambda_max(); }

QuadForm2 ellipse_form(double a, double b, double phi) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("ellipse_form: axes must be positive");
  const double cs = std::cos(phi), sn = std::sin(phi);
  const double ia = 1.0 / (a * a), ib = 1.0 / (b * b);
  return {cs * cs * ia + sn * sn * ib, cs * sn * (ia - ib), sn * sn * ia + cs * cs * ib};
}

std::optional<QuadForm2> quadratic_form(const RadialShape& shape) {
  switch (shape.kind()) {
    case ShapeKind::constant: {
      const double c = shape.circle_radius();
      return QuadForm2(1.0 / (c * c), 0.0, 1.0 / (c * c));
    }
    case ShapeKind::ellipse: {
      const auto e = shape.ellipse_axes();
      return ellipse_form(e.a, e.b, e.phi);
    }
    case ShapeKind::transformed: {
      const auto base = quadratic_form(shape.base());
      if (!base) return std::nullopt;
      // t(p)^2 = (g^-1 p)^T u (g^-1 p) / scale^2
      const Mat2 gi = shape.matrix().inverse();
      const double k = 1.0 / (shape.scale_factor() * shape.scale_factor());
      const double a = gi.a(), b = gi.b(), c = gi.c(), d = gi.d();
      const double p11 = base->u11() * a + base->u12() * c, p12 = base->u11() * b + base->u12() * d;
      const double p21 = base->u12() * a + base->u22() * c, p22 = base->u12() * b + base->u22() * d;
      return QuadForm2(k * (a * p11 + c * p21), k * (a * p12 + c * p22), k * (b * p12 + d * p22));
    }
    default:
      return std::nullopt;
  }
}

std::int64_t enumeration_cap() { return cap_storage().load(); }
void set_enumeration_cap(std::int64_t cap) {
  if (cap <= 0) throw DomainError("set_enumeration_cap: cap must be positive");
  cap_storage().store(cap);
}

EvalResult hlawka_direct(const RadialShape& shape, Complex s, double radius, bool tail_corrected) {
  require_convergent(s, "hlawka_direct");
  check_radius(radius, "hlawka_direct");
  EvalResult out;
  const Complex two_s = 2.0 * s;
  out.value = disc_sum<Complex>(radius, [&](std::int64_t m, std::int64_t n) {
    return pow_neg(shape.dilation(static_cast<double>(m), static_cast<double>(n)), two_s);
  });
  const double sigma = s.real();
  const double rmax_pow = std::pow(shape.r_max(), 2.0 * sigma);
  out.truncation = {{"radius", radius}, {"points", static_cast<double>(disc_point_count(radius))}};
  if (tail_corrected) {
    out.value += continuum_tail([&](double th) { return std::exp(two_s * std::log(shape.radius(th))); }, s, radius);
    out.error_estimate = corrected_tail_bound(rmax_pow, s, radius);
    out.truncation.emplace_back("tail_corrected", 1.0);
  } else {
    out.error_estimate = raw_tail_bound(rmax_pow, sigma, radius);
  }
  require_finite(out.value, "hlawka_direct");
  return out;
}

EvalResult hlawka_from_spectrum(const Spectrum& spectrum, Complex s) {
  require_convergent(s, "hlawka_from_spectrum");
  EvalResult out;
  std::vector<Complex> terms;
  terms.reserve(spectrum.entries.size());
  const Complex two_s = 2.0 * s;
  for (const auto& e : spectrum.entries) terms.push_back(static_cast<double>(e.a) * pow_neg(e.t, two_s));
  out.value = require_finite(pairwise_sum(terms), "hlawka_from_spectrum");
  out.truncation = {{"t_max", spectrum.t_max}, {"entries", static_cast<double>(spectrum.entries.size())}};
  // Points beyond t_max: at most ~ r_max-free count growth C x^2, bounded by the continuum term.
  const double sigma = s.real();
  const double density = spectrum.entries.empty() ? 0.0 : [&] {
    double total = 0.0;
    for (const auto& e : spectrum.entries) total += static_cast<double>(e.a);
    return total / (spectrum.t_max * spectrum.t_max);
  }();
  out.error_estimate = 2.0 * density * std::pow(spectrum.t_max, 2.0 - 2.0 * sigma) * sigma / (sigma - 1.0);
  return out;
}

EvalResult epstein_direct(const QuadForm2& u, Complex s, double radius, bool tail_corrected) {
  require_convergent(s, "epstein_direct");
  check_radius(radius, "epstein_direct");
  EvalResult out;
  out.value = disc_sum<Complex>(radius, [&](std::int64_t m, std::int64_t n) {
    return pow_neg(u(static_cast<double>(m), static_cast<double>(n)), s);
  });
  const double sigma = s.real();
  const double scale = std::pow(u.lambda_min(), -sigma);
  out.truncation = {{"radius", radius}, {"points", static_cast<double>(disc_point_count(radius))}};
  if (tail_corrected) {
    out.value += continuum_tail([&](double th) { return pow_neg(u(std::cos(th), std::sin(th)), s); }, s, radius);
    out.error_estimate = corrected_tail_bound(scale, s, radius);
    out.truncation.emplace_back("tail_corrected", 1.0);
  } else {
    out.error_estimate = raw_tail_bound(scale, sigma, radius);
  }
  require_finite(out.value, "epstein_direct");
  return out;
}

EvalResult epstein_completed(const QuadForm2& u, Complex s, double split) {
  if (!is_finite(s)) throw DomainError("epstein_completed: s is not finite");
  if (!(split > 0.0) || !std::isfinite(split)) throw DomainError("epstein_completed: split must be positive");
  if (std::abs(s) < kPoleTol || std::abs(s - 1.0) < kPoleTol) throw PoleError("epstein_completed: pole at s = 0 or 1");
  if (u.condition_number() > kMaxCondition) throw DomainError("epstein_completed: condition number exceeds 1e8");
  const QuadForm2 ui = u.inverse();
  const double root_det = 1.0 / std::sqrt(u.det());
  const double p = std::max(std::abs(s.real()), std::abs(1.0 - s.real())) + 2.0;
  const double cutoff = gaussian_cutoff(p, theta_epsilon(s));

  const double alpha = split_angle(s);
  const double damp = std::cos(alpha);
  const Complex t0 = std::polar(split, alpha);
  const Complex log_t0(std::log(split), alpha);

  std::vector<Complex> terms;
  double magnitude = 0.0;
  for_each_in_ellipse(u, cutoff / (kPi * split * damp), [&](double, double, double qv) {
    const double x = kPi * qv;
    const Complex t = pow_neg(x, s) * upper_incomplete_gamma(s, x * t0);
    magnitude += std::abs(t);
    terms.push_back(t);
  });
  const std::size_t n_primal = terms.size();
  const Complex s1 = 1.0 - s;
  for_each_in_ellipse(ui, cutoff * split / (kPi * damp), [&](double, double, double qv) {
    const double x = kPi * qv;
    const Complex t = root_det * pow_neg(x, s1) * upper_incomplete_gamma(s1, x / t0);
    magnitude += std::abs(t);
    terms.push_back(t);
  });
  const Complex polar = -std::exp(s * log_t0) / s - root_det * std::exp((s - 1.0) * log_t0) / (1.0 - s);
  EvalResult out;
  out.value = require_finite(pairwise_sum(terms) + polar, "epstein_completed");
  out.error_estimate = 1e-15 * (magnitude + std::abs(polar)) + theta_epsilon(s) * static_cast<double>(terms.size());
  out.truncation = {{"cutoff", cutoff},
                    {"split", split},
                    {"split_angle", alpha},
                    {"primal_terms", static_cast<double>(n_primal)},
                    {"dual_terms", static_cast<double>(terms.size() - n_primal)}};
  return out;
}

EvalResult epstein_continued(const QuadForm2& u, Complex s, double split) {
  EvalResult lam = epstein_completed(u, s, split);
  const Complex factor = std::exp(s * std::log(kPi)) * rgamma(s);
  lam.value = require_finite(lam.value * factor, "epstein_continued");
  lam.error_estimate *= std::abs(factor);
  return lam;
}

EvalResult eisenstein_fq_truncated(int q, double phi, Complex s, double radius, bool reject_vanishing) {
  require_convergent(s, "eisenstein_fq_truncated");
  check_radius(radius, "eisenstein_fq_truncated");
  if (q % 4 != 0 && reject_vanishing)
    throw VanishingError("eisenstein_fq_truncated: E#.f_q vanishes identically unless 4 | q");
  const double cs = std::cos(phi), sn = std::sin(phi);
  EvalResult out;
  const Complex sum = disc_sum<Complex>(radius, [&](std::int64_t mi, std::int64_t ni) {
    const double m = static_cast<double>(mi), n = static_cast<double>(ni);
    // Row vector (m, n) kappa_phi.
    const double x = m * cs - n * sn;
    const double y = m * sn + n * cs;
    const double len = std::hypot(x, y);
    return unit_power(Complex(x / len, y / len), q) * pow_neg(m * m + n * n, s);
  });
  out.value = require_finite(minus_i_pow(q) * sum, "eisenstein_fq_truncated");
  out.error_estimate = raw_tail_bound(1.0, s.real(), radius);
  out.truncation = {{"q", static_cast<double>(q)}, {"phi", phi}, {"radius", radius}};
  return out;
}

std::vector<EvalResult> eisenstein_fq_truncated_batch(int q_max, Complex s, double radius) {
  require_convergent(s, "eisenstein_fq_truncated_batch");
  check_radius(radius, "eisenstein_fq_truncated_batch");
  if (q_max < 0) throw DomainError("eisenstein_fq_truncated_batch: q_max must be nonnegative");
  const int count = q_max / 4 + 1;
  if (count > kMaxBatch) throw DomainError("eisenstein_fq_truncated_batch: q_max too large for one pass");
  const Harmonics sums = disc_sum<Harmonics>(radius, [&](std::int64_t mi, std::int64_t ni) {
    const double m = static_cast<double>(mi), n = static_cast<double>(ni);
    const double len = std::hypot(m, n);
    const Complex u4 = unit_power(Complex(m / len, n / len), 4);
    Harmonics h;
    h.count = count;
    Complex term = pow_neg(m * m + n * n, s);
    for (int k = 0; k < count; ++k) {
      h.v[static_cast<std::size_t>(k)] = term;
      term *= u4;
    }
    return h;
  });
  std::vector<EvalResult> out(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) {
    auto& r = out[static_cast<std::size_t>(k)];
    r.value = require_finite(sums.v[static_cast<std::size_t>(k)], "eisenstein_fq_truncated_batch");
    r.error_estimate = raw_tail_bound(1.0, s.real(), radius);
    r.truncation = {{"q", 4.0 * k}, {"phi", 0.0}, {"radius", radius}};
  }
  return out;
}

EvalResult eisenstein_fq_continued(int q, Complex s, double split) {
  if (q < 4 || q % 4 != 0) throw DomainError("eisenstein_fq_continued: requires q >= 4 and q = 0 mod 4");
  if (!is_finite(s)) throw DomainError("eisenstein_fq_continued: s is not finite");
  if (!(split > 0.0) || !std::isfinite(split)) throw DomainError("eisenstein_fq_continued: split must be positive");
  const Complex sp = s + 0.5 * q;
  const Complex sd = static_cast<double>(q) + 1.0 - sp;
  const double p = 0.5 * q + std::max(std::abs(sp.real()), std::abs(sd.real())) + 2.0;
  const double cutoff = gaussian_cutoff(p, theta_epsilon(s));
  const QuadForm2 id = QuadForm2::identity();
  const Complex sign = minus_i_pow(q);

  std::vector<Complex> terms;
  double magnitude = 0.0;
  const double alpha = split_angle(s);
  const double damp = std::cos(alpha);
  const Complex t0 = std::polar(split, alpha);
  const double reach = cutoff * std::max(split, 1.0 / split) / (kPi * damp);
  for_each_in_ellipse(id, reach, [&](double m, double n, double qv) {
    const double x = kPi * qv;
    Complex pm = 1.0;
    for (int i = 0; i < q; ++i) pm *= Complex(m, n);
    Complex t = 0.0;
    if (x * split * damp <= cutoff) t += pow_neg(x, sp) * upper_incomplete_gamma(sp, x * t0);
    if (x * damp / split <= cutoff) t += sign * pow_neg(x, sd) * upper_incomplete_gamma(sd, x / t0);
    t *= pm;
    magnitude += std::abs(t);
    terms.push_back(t);
  });
  const Complex lam = pairwise_sum(terms);
  const Complex factor = sign * std::exp(sp * std::log(kPi)) * rgamma(sp);
  EvalResult out;
  out.value = require_finite(factor * lam, "eisenstein_fq_continued");
  out.error_estimate = std::abs(factor) * (1e-15 * magnitude + theta_epsilon(s) * static_cast<double>(terms.size()));
  out.truncation = {{"q", static_cast<double>(q)},
                    {"cutoff", cutoff},
                    {"split", split},
                    {"split_angle", alpha},
                    {"terms", static_cast<double>(terms.size())}};
  return out;
}

EvalResult classical_eisenstein(Complex z, Complex s, double radius) {
  if (!(z.imag() > 0.0) || !is_finite(z)) throw DomainError("classical_eisenstein: requires Im z > 0");
  const double x = z.real(), y = z.imag();
  // |mz + n|^2 / y = m^2 |z|^2 / y + 2 m n x / y + n^2 / y
  const QuadForm2 u(std::norm(z) / y, x / y, 1.0 / y);
  EvalResult r = (radius > 0.0 && s.real() > 1.0) ? epstein_direct(u, s, radius, true) : epstein_continued(u, s);
  const Complex zeta2s = riemann_zeta(2.0 * s);
  r.value = require_finite(r.value / (2.0 * zeta2s), "classical_eisenstein");
  r.error_estimate /= std::abs(2.0 * zeta2s);
  return r;
}

EvalResult reconstruct_hlawka(const RadialShape& shape, Complex s, int q_max, ReconstructMode mode, double radius) {
  if (q_max < 0) throw DomainError("reconstruct_hlawka: q_max must be nonnegative");
  if (mode == ReconstructMode::truncated) require_convergent(s, "reconstruct_hlawka");
  const int qm = q_max - q_max % 4;
  const FourierTable table = fourier_coeffs(shape, s, qm + 8);
  EvalResult out;
  out.warnings = table.warnings;
  const double first = std::abs(table.at(0));
  const double last = std::max(std::abs(table.at(qm)), std::abs(table.at(-qm)));
  if (qm > 0 && last >= 1e-12 * first) out.warnings.emplace_back("Fourier coefficients have not decayed below 1e-12 of c(0) at q_max");

  std::vector<Complex> modes;  // E#.f_q(I, s) for q = 0, 4, ..., qm
  std::vector<double> mode_err;
  if (mode == ReconstructMode::truncated) {
    for (const auto& r : eisenstein_fq_truncated_batch(qm, s, radius)) {
      modes.push_back(r.value);
      mode_err.push_back(r.error_estimate);
    }
  } else {
    const auto e0 = epstein_continued(QuadForm2::identity(), s);
    modes.push_back(e0.value);
    mode_err.push_back(e0.error_estimate);
    for (int q = 4; q <= qm; q += 4) {
      const auto e = eisenstein_fq_continued(q, s);
      modes.push_back(e.value);
      mode_err.push_back(e.error_estimate);
    }
  }
  std::vector<Complex> terms;
  double err = 0.0;
  for (int k = 0; 4 * k <= qm; ++k) {
    const int q = 4 * k;
    // c(q) i^q E#.f_q + c(-q) i^-q E#.f_-q, with E#.f_-q(I) = E#.f_q(I) and i^{+-q} = 1.
    const Complex c = (q == 0) ? table.at(0) : i_pow(q) * table.at(q) + i_pow(-q) * table.at(-q);
    terms.push_back(c * modes[static_cast<std::size_t>(k)]);
    err += std::abs(c) * mode_err[static_cast<std::size_t>(k)];
  }
  out.value = require_finite(pairwise_sum(terms), "reconstruct_hlawka");
  // Dropped modes: |E#.f_q| <= E(I, sigma) for Re s > 1; tail of the coefficients extrapolated
  // geometrically from the last two multiples of 4 when they decay, else linearly (kinks).
  const double bound = s.real() > 1.0 ? std::abs(riemann_zeta(s.real()) * dirichlet_beta(s.real())) * 4.0 : std::abs(modes[0]);
  double tail = 0.0;
  if (qm >= 4) {
    const double a1 = std::abs(table.at(qm)) + std::abs(table.at(-qm));
    const double a0 = std::abs(table.at(qm - 4)) + std::abs(table.at(4 - qm));
    const double rho = a0 > 0.0 ? a1 / a0 : 0.0;
    tail = rho < 0.5 ? a1 * rho / (1.0 - rho) : a1 * qm / 4.0;
  }
  out.error_estimate = err + tail * bound + table.error_estimate * bound;
  out.truncation = {{"q_max", static_cast<double>(qm)},
                    {"fourier_n", static_cast<double>(table.n)},
                    {"mode", mode == ReconstructMode::truncated ? 0.0 : 1.0}};
  if (mode == ReconstructMode::truncated) out.truncation.emplace_back("radius", radius);
  return out;
}

}  // namespace hlawka

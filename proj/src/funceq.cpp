#include "hlawka/funceq.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include "hlawka/fourier.hpp"
#include "hlawka/parallel.hpp"
#include "hlawka/special.hpp"
#include "hlawka/zeta.hpp"

namespace hlawka {

namespace {

constexpr double kSampleGap = 1e-3;
constexpr double kResidueStep = 1e-4;

SampleResidual make_sample(Complex s, Complex lhs, Complex rhs) {
  SampleResidual r;
  r.s = s;
  r.lhs = lhs;
  r.rhs = rhs;
  r.abs_residual = std::abs(lhs - rhs);
  const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
  r.rel_residual = r.abs_residual / scale;
  return r;
}

// Evaluates fn(s) -> SampleResidual for every sample; samples are independent.
template <typename Fn>
std::vector<SampleResidual> run_samples(const std::vector<Complex>& samples, Fn&& fn) {
  std::vector<SampleResidual> out(samples.size());
  parallel_chunks(samples.size(), [&](std::size_t i) { out[i] = fn(samples[i]); });
  return out;
}

void require_away_from(const std::vector<Complex>& samples, std::initializer_list<double> points, const char* what) {
  for (const Complex& s : samples) {
    if (!is_finite(s)) throw DomainError(std::string(what) + ": sample is not finite");
    for (double p : points)
      if (std::abs(s - p) < kSampleGap) throw PoleError(std::string(what) + ": sample within 1e-3 of a pole");
  }
}

void require_away_from_integers(const std::vector<Complex>& samples, const char* what) {
  for (const Complex& s : samples) {
    if (!is_finite(s)) throw DomainError(std::string(what) + ": sample is not finite");
    if (std::abs(s - std::round(s.real())) < kSampleGap)
      throw PoleError(std::string(what) + ": sample within 1e-3 of a Gamma-factor pole");
  }
}

Complex cpow(double base, Complex e) { return std::exp(e * std::log(base)); }
Complex cpow(Complex base, Complex e) { return std::exp(e * std::log(base)); }

double shoelace(const std::vector<Vec2>& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % v.size()];
    acc += p.x * q.y - q.x * p.y;
  }
  return 0.5 * std::abs(acc);
}

double perimeter(const std::vector<Vec2>& v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Vec2& p = v[i];
    const Vec2& q = v[(i + 1) % v.size()];
    acc += std::hypot(q.x - p.x, q.y - p.y);
  }
  return acc;
}

// Cosine-basis 4q-th coefficient of (c + d cos^2)^{-s} as the binomial k-series.
Complex k_series(double c, double d, Complex s, int q) {
  const Complex f = ellipse_coefficient(c, d, s, q).value;
  return q == 0 ? f : 2.0 * f;
}

// The Gamma-ratio j-series c^{-s} sum_j binom(2j+4q, j) d^{j+2q} Gamma(j+2q-s) / (2^{2q-1} c^{j+2q} Gamma(-s)) 2^{-j},
// summed to its smallest term. Returns the partial sum, terms used and the final term ratio.
struct JSeries {
  Complex value;
  int terms;
  double last_ratio;
};

JSeries j_series(double c, double d, Complex s, int q) {
  const double ratio = d / c;
  // j = 0 term: d^{2q}/c^{2q} (-s)_{2q} / 2^{2q-1}
  Complex poch = 1.0;
  for (int i = 0; i < 2 * q; ++i) poch *= (-s + static_cast<double>(i));
  Complex term = poch * std::pow(ratio, 2 * q) / std::pow(2.0, 2 * q - 1);
  Complex acc = 0.0;
  double best = std::abs(term);
  double last_ratio = 0.0;
  int j = 0;
  constexpr int kMaxTerms = 400;
  for (; j < kMaxTerms; ++j) {
    acc += term;
    const double jj = j;
    const double binom_ratio = (2.0 * jj + 4.0 * q + 2.0) * (2.0 * jj + 4.0 * q + 1.0) / ((jj + 1.0) * (jj + 4.0 * q + 2.0));
    const Complex next = term * binom_ratio * 0.5 * ratio * (-s + jj + 2.0 * q);
    last_ratio = std::abs(term) > 0.0 ? std::abs(next) / std::abs(term) : 0.0;
    if (next == 0.0) {
      ++j;
      break;
    }
    if (std::abs(next) > best && last_ratio > 1.0) {
      ++j;
      break;
    }
    best = std::min(best, std::abs(next));
    term = next;
  }
  return {cpow(c, -s) * acc, j, last_ratio};
}

}  // namespace

double CheckReport::max_rel_residual() const {
  double m = 0.0;
  for (const auto& r : samples) m = std::max(m, r.rel_residual);
  return m;
}

void finalize(CheckReport& report) {
  if (!report.gated || report.samples.empty()) {
    report.pass = false;
    return;
  }
  report.pass = std::all_of(report.samples.begin(), report.samples.end(), [&](const SampleResidual& r) {
    if (r.allowed >= 0.0) return r.abs_residual <= r.allowed;
    return r.rel_residual <= report.tolerance;
  });
}

CheckReport check_circle_fe(double c, const std::vector<Complex>& samples) {
  if (!(c > 0.0) || !std::isfinite(c)) throw DomainError("check_circle_fe: c must be positive");
  require_away_from(samples, {0.0, 1.0}, "check_circle_fe");
  const QuadForm2 u = *quadratic_form(RadialShape::circle(c));
  CheckReport rep;
  rep.identity = "circle-fe";
  rep.tolerance = 1e-10;
  rep.truncation = {{"c", c}, {"split_lhs", 1.0}, {"split_rhs", kDualSplit}};
  rep.samples = run_samples(samples, [&](Complex s) {
    // pi^{-s} Gamma(s) Z(s) is the completed Epstein function of I / c^2.
    const Complex lhs = cpow(c, -2.0 * s) * epstein_completed(u, s, 1.0).value;
    const Complex rhs = cpow(c, -2.0 * (1.0 - s)) * epstein_completed(u, 1.0 - s, kDualSplit).value;
    return make_sample(s, lhs, rhs);
  });
  finalize(rep);
  return rep;
}

CheckReport check_epstein_fe(double u11, double u12, double u22, const std::vector<Complex>& samples) {
  const QuadForm2 u(u11, u12, u22);
  require_away_from(samples, {0.0, 1.0}, "check_epstein_fe");
  const QuadForm2 ui = u.inverse();
  CheckReport rep;
  rep.identity = "epstein-fe";
  rep.tolerance = 1e-10;
  rep.truncation = {{"u11", u11}, {"u12", u12}, {"u22", u22}, {"split_lhs", 1.0}, {"split_rhs", kDualSplit}};
  rep.samples = run_samples(samples, [&](Complex s) {
    const Complex lhs = epstein_completed(u, s, 1.0).value;
    const Complex rhs = epstein_completed(ui, 1.0 - s, kDualSplit).value / std::sqrt(u.det());
    return make_sample(s, lhs, rhs);
  });
  finalize(rep);
  return rep;
}

CheckReport check_square_closed_form(const std::vector<Complex>& samples, double radius) {
  if (!(radius >= 1000.0)) throw DomainError("check_square_closed_form: radius must be >= 1000");
  for (const Complex& s : samples)
    if (!(s.real() > 1.0)) throw DomainError("check_square_closed_form: requires Re(s) > 1");
  const RadialShape square = RadialShape::square();
  CheckReport rep;
  rep.identity = "square-closed-form";
  rep.tolerance = 0.0;
  rep.truncation = {{"radius", radius}};
  // Sequential: hlawka_direct parallelizes internally.
  for (const Complex& s : samples) {
    const EvalResult direct = hlawka_direct(square, s, radius);
    SampleResidual r = make_sample(s, direct.value, 8.0 * riemann_zeta(2.0 * s - 1.0));
    r.allowed = direct.error_estimate + 1e-8;
    rep.samples.push_back(r);
  }
  finalize(rep);
  return rep;
}

CheckReport check_eq7(int q, const std::vector<Complex>& samples) {
  if (q < 0) throw DomainError("check_eq7: q must be nonnegative");
  if (q % 4 != 0) throw VanishingError("check_eq7: E#.f_q vanishes identically unless 4 | q; the check would be vacuous");
  require_away_from_integers(samples, "check_eq7");
  CheckReport rep;
  rep.identity = "eq7";
  rep.tolerance = 1e-8;
  rep.truncation = {{"q", static_cast<double>(q)}, {"split_lhs", 1.0}, {"split_rhs", kDualSplit}};
  const double half = 0.5 * q;
  rep.samples = run_samples(samples, [&](Complex s) {
    const Complex t = 1.0 - s;
    const Complex e_s = q == 0 ? epstein_continued(QuadForm2::identity(), s, 1.0).value : eisenstein_fq_continued(q, s, 1.0).value;
    const Complex e_t =
        q == 0 ? epstein_continued(QuadForm2::identity(), t, kDualSplit).value : eisenstein_fq_continued(q, t, kDualSplit).value;
    const Complex gs = cgamma(s);
    const Complex lhs = cpow(kPi, -s) * gs * e_s;
    const Complex rhs = cpow(kPi, -t) * cgamma(t) * gs * gs * rgamma(s + half) * rgamma(s - half) * e_t;  // (-i)^q = 1
    return make_sample(s, lhs, rhs);
  });
  finalize(rep);
  return rep;
}

CheckReport check_eq8_ellipse_fe(double a, double b, double phi, const std::vector<Complex>& samples) {
  if (!(b > 0.0) || !(a >= b) || !std::isfinite(a)) throw DomainError("check_eq8_ellipse_fe: requires a >= b > 0");
  if (a / b > 1e4) throw DomainError("check_eq8_ellipse_fe: degenerate ellipse (a/b > 1e4)");
  require_away_from(samples, {0.0, 1.0}, "check_eq8_ellipse_fe");
  const QuadForm2 u = *quadratic_form(RadialShape::ellipse(a, b, phi));
  // r*: semi-axes 1/a <= 1/b, major axis along the old minor axis.
  const QuadForm2 u_dual = *quadratic_form(RadialShape::ellipse(1.0 / b, 1.0 / a, phi + kPi / 2));
  CheckReport rep;
  rep.identity = "eq8-ellipse-fe";
  rep.tolerance = 1e-9;
  rep.truncation = {{"a", a}, {"b", b}, {"phi", phi}, {"split_lhs", 1.0}, {"split_rhs", kDualSplit}};
  std::vector<double> printed(samples.size());
  rep.samples = run_samples(samples, [&](const Complex& s) {
    const Complex lhs = epstein_completed(u, s, 1.0).value;
    const Complex dual = epstein_completed(u_dual, 1.0 - s, kDualSplit).value;
    const Complex rhs = a * b * dual;
    const auto idx = static_cast<std::size_t>(&s - samples.data());
    printed[idx] = make_sample(s, lhs, dual / std::sqrt(a * b)).rel_residual;
    return make_sample(s, lhs, rhs);
  });
  rep.statistics.emplace_back("printed_factor_rel_residual", *std::max_element(printed.begin(), printed.end()));
  if (!samples.empty() && samples.front().real() > 1.0 && phi != 0.0) {
    const Complex z0 = epstein_continued(*quadratic_form(RadialShape::ellipse(a, b, 0.0)), samples.front()).value;
    const Complex z1 = epstein_continued(u, samples.front()).value;
    rep.statistics.emplace_back("orientation_rel_difference", std::abs(z1 - z0) / std::abs(z0));
  }
  rep.notes.emplace_back("factor ab = det(u)^{-1/2}; the (ab)^{-1/2} variant is reported as printed_factor_rel_residual");
  finalize(rep);
  return rep;
}

CheckReport check_eq10(double a, double b, int q, const std::vector<Complex>& samples, Eq10Reading reading,
                       Eq10Exponent exponent) {
  if (!(a > 0.0) || !(b > 0.0)) throw DomainError("check_eq10: axes must be positive");
  if (q <= 0) throw DomainError("check_eq10: q must be positive");
  const double c = a * a / (b * b);
  const double d = 1.0 - c;
  if (!(std::abs(2.0 * d / c) < 1.0)) throw DivergenceError("check_eq10: requires |2d/c| < 1");
  for (const Complex& s : samples)
    if (!is_finite(s)) throw DomainError("check_eq10: sample is not finite");
  const double ab = a * b;
  const double shift = exponent == Eq10Exponent::three_halves ? 1.5 : 2.5;
  CheckReport rep;
  rep.identity = std::string("eq10-") + (reading == Eq10Reading::j_form ? "j" : "k") + "-form-" +
                 (exponent == Eq10Exponent::three_halves ? "3/2" : "5/2");
  rep.gated = false;
  rep.truncation = {{"a", a}, {"b", b}, {"q", static_cast<double>(q)}, {"c", c}, {"d", d}};
  std::vector<JSeries> diag(2 * samples.size());
  rep.samples = run_samples(samples, [&](const Complex& s) {
    const auto idx = static_cast<std::size_t>(&s - samples.data());
    Complex ks, kt;
    if (reading == Eq10Reading::k_form) {
      ks = k_series(c, d, s, q);
      kt = k_series(c, d, 1.0 - s, q);
    } else {
      diag[2 * idx] = j_series(c, d, s, q);
      diag[2 * idx + 1] = j_series(c, d, 1.0 - s, q);
      ks = diag[2 * idx].value;
      kt = diag[2 * idx + 1].value;
    }
    const Complex gs = cgamma(s);
    const Complex lhs = cpow(kPi, -s) * gs * cpow(ab, 2.0 * s) * ks;
    // Gamma(1-s) Gamma(s)^2 / (Gamma(s+2q) Gamma(s-2q)) = Gamma(s) Gamma(1-s+2q) / Gamma(s+2q) by reflection;
    // the right form stays finite at the integers where the left has cancelling poles.
    const Complex rhs = cpow(kPi, -(1.0 - s)) * gs * cgamma(1.0 - s + 2.0 * q) * rgamma(s + 2.0 * q) *
                        cpow(ab, 2.0 * s - shift) * kt;
    return make_sample(s, lhs, rhs);
  });
  if (reading == Eq10Reading::j_form) {
    double worst = 0.0;
    int terms = 0;
    for (const auto& j : diag) {
      worst = std::max(worst, j.last_ratio);
      terms = std::max(terms, j.terms);
    }
    rep.statistics.emplace_back("j_terms_max", terms);
    rep.statistics.emplace_back("j_final_term_ratio_max", worst);
    if (worst > 1.0)
      rep.notes.emplace_back("divergent: the j-series terms grow factorially; values are optimally truncated partial sums");
  } else {
    rep.notes.emplace_back("k-series summed over k >= 2q in the cosine basis");
  }
  if (d == 0.0) {
    rep.notes.emplace_back("degenerate ellipse: all q > 0 coefficients vanish on both sides");
    if (!samples.empty()) {
      std::vector<Complex> ok;
      for (const Complex& s : samples)
        if (std::abs(s) >= kSampleGap && std::abs(s - 1.0) >= kSampleGap) ok.push_back(s);
      if (!ok.empty()) rep.statistics.emplace_back("q0_circle_fe_rel_residual", check_circle_fe(a, ok).max_rel_residual());
    }
  }
  rep.statistics.emplace_back("max_rel_residual", rep.max_rel_residual());
  finalize(rep);
  return rep;
}

std::vector<CheckReport> eq10_report(double a, double b, int q, const std::vector<Complex>& samples) {
  std::vector<CheckReport> out;
  for (auto reading : {Eq10Reading::j_form, Eq10Reading::k_form})
    for (auto exponent : {Eq10Exponent::three_halves, Eq10Exponent::five_halves})
      out.push_back(check_eq10(a, b, q, samples, reading, exponent));
  return out;
}

CheckReport check_odd_vs_square(double t_max, const std::vector<Complex>& samples) {
  if (!(t_max >= 30.0)) throw DomainError("check_odd_vs_square: t_max must be >= 30");
  for (const Complex& s : samples)
    if (!(s.real() > 1.0)) throw DomainError("check_odd_vs_square: requires Re(s) > 1");
  const RadialShape square = RadialShape::square();
  const RadialShape odd = RadialShape::odd();
  const Spectrum sq = build_spectrum(square, t_max);
  const Spectrum od = build_spectrum(odd, t_max);
  CheckReport rep;
  rep.identity = "odd-vs-square";
  rep.tolerance = 1e-12;
  rep.truncation = {{"t_max", t_max}};
  std::size_t mismatches = sq.entries.size() == od.entries.size() ? 0 : 1;
  for (std::size_t i = 0; i < std::min(sq.entries.size(), od.entries.size()); ++i)
    if (sq.entries[i].t != od.entries[i].t || sq.entries[i].a != od.entries[i].a) ++mismatches;
  rep.statistics = {{"square_entries", static_cast<double>(sq.entries.size())},
                    {"odd_entries", static_cast<double>(od.entries.size())},
                    {"entry_mismatches", static_cast<double>(mismatches)},
                    {"square_vertices", static_cast<double>(square.polygon_vertices().size())},
                    {"odd_vertices", static_cast<double>(odd.polygon_vertices().size())},
                    {"square_area", shoelace(square.polygon_vertices())},
                    {"odd_area", shoelace(odd.polygon_vertices())},
                    {"square_perimeter", perimeter(square.polygon_vertices())},
                    {"odd_perimeter", perimeter(odd.polygon_vertices())}};
  rep.notes.emplace_back(
      "a linear image of a convex quadrilateral has 4 vertices; the odd shape has 7, so it is not in the GL(2,R) orbit of the square");
  for (const Complex& s : samples) rep.samples.push_back(make_sample(s, hlawka_from_spectrum(sq, s).value, hlawka_from_spectrum(od, s).value));
  finalize(rep);
  if (mismatches != 0) rep.pass = false;
  return rep;
}

PerronResult perron_count_approx(const RadialShape& shape, double x, double sigma, double T, double radius) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("perron_count_approx: x must be positive");
  if (!(sigma > 1.0)) throw DomainError("perron_count_approx: requires sigma > 1");
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("perron_count_approx: T must be positive");
  const Spectrum spec = build_spectrum(shape, std::max(2.0 * x, radius));
  PerronResult res;
  res.x = x;
  res.sigma = sigma;
  res.T = T;
  res.target = count_points(shape, x, true);
  std::vector<double> weight, freq;
  for (const auto& e : spec.entries) {
    const double l = std::log(x / e.t);
    if (std::abs(e.t - x) <= 1e-6) res.warnings.emplace_back("x lies on a jump; the target counts boundary points at half weight");
    weight.push_back(static_cast<double>(e.a) * std::exp(2.0 * sigma * l));
    freq.push_back(2.0 * l);
  }
  auto f = [&](double t) {
    const Complex s(sigma, t);
    Complex acc = 0.0;
    for (std::size_t k = 0; k < weight.size(); ++k) acc += weight[k] * std::polar(1.0, freq[k] * t);
    return (acc / s).real() / kPi;
  };
  const auto n_pairs = static_cast<std::int64_t>(std::ceil(T / 0.1));
  const double h = T / (2.0 * static_cast<double>(n_pairs));
  std::vector<double> ends(static_cast<std::size_t>(n_pairs) + 1), residuals(static_cast<std::size_t>(n_pairs) + 1);
  std::vector<double> pair_sum(static_cast<std::size_t>(n_pairs));
  parallel_chunks(pair_sum.size(), [&](std::size_t i) {
    const double t0 = 2.0 * h * static_cast<double>(i);
    pair_sum[i] = h / 3.0 * (f(t0) + 4.0 * f(t0 + h) + f(t0 + 2.0 * h));
  });
  double acc = 0.0;
  residuals[0] = -res.target;
  for (std::size_t i = 0; i < pair_sum.size(); ++i) {
    acc += pair_sum[i];
    ends[i + 1] = 2.0 * h * static_cast<double>(i + 1);
    residuals[i + 1] = acc - res.target;
  }
  res.approx = acc;
  double next_mark = 10.0;
  for (std::size_t i = 1; i < ends.size(); ++i) {
    const bool last = i + 1 == ends.size();
    if (ends[i] + 1e-9 < next_mark && !last) continue;
    double env = 0.0;
    for (std::size_t j = i + 1; j-- > 0 && ends[j] >= 0.75 * ends[i];) env = std::max(env, std::abs(residuals[j]));
    res.study.push_back({ends[i], residuals[i], env});
    while (next_mark <= ends[i] + 1e-9) next_mark += 10.0;
  }
  if (!res.study.empty() && res.study.back().envelope > 0.5)
    res.warnings.emplace_back("oscillation envelope above 0.5 at T: increase T");
  return res;
}

void write_perron_csv(std::ostream& out, const PerronResult& result) {
  out << "T,residual\n";
  char buf[96];
  for (const auto& row : result.study) {
    std::snprintf(buf, sizeof(buf), "%.15g,%.15g\n", row.T, row.envelope);
    out << buf;
  }
}

EvalResult hlawka_continued(const RadialShape& shape, Complex s) {
  if (const auto u = quadratic_form(shape)) return epstein_continued(*u, s);
  const ShapeKind kind = shape.kind();
  if (kind == ShapeKind::square || kind == ShapeKind::odd) {
    if (std::abs(s - 1.0) < 1e-8) throw PoleError("hlawka_continued: pole at s = 1");
    EvalResult r;
    r.value = require_finite(8.0 * cpow(shape.scale_factor(), 2.0 * s) * riemann_zeta(2.0 * s - 1.0), "hlawka_continued");
    r.error_estimate = 1e-12 * std::abs(r.value);
    r.truncation = {{"closed_form", 1.0}};
    return r;
  }
  throw DomainError("hlawka_continued: no continuation for this shape kind");
}

EvalResult residue_at_one(const RadialShape& shape) {
  const ShapeKind kind = shape.kind();
  const bool closed = kind == ShapeKind::square || kind == ShapeKind::odd;
  if (!closed && !quadratic_form(shape)) throw DomainError("residue_at_one: supported for circle, ellipse, square and odd shapes");
  const double h = kResidueStep;
  const Complex up = h * hlawka_continued(shape, 1.0 + h).value;
  const Complex down = -h * hlawka_continued(shape, 1.0 - h).value;
  EvalResult r;
  r.value = 0.5 * (up + down);
  r.error_estimate = std::abs(up - down);
  r.truncation = {{"step", h}};
  return r;
}

CheckReport probe_regular_fe(const RegularFEForm& form, const RadialShape& shape, const RadialShape& dual,
                             const std::vector<Complex>& samples) {
  for (const auto& [alpha, mu] : form.numerator)
    if (!(alpha > 0.0)) throw DomainError("probe_regular_fe: alpha_i must be positive");
  for (const auto& [beta, omega] : form.denominator)
    if (!(beta > 0.0)) throw DomainError("probe_regular_fe: beta_j must be positive");
  if (form.A == 0.0 || form.B == 0.0) throw DomainError("probe_regular_fe: A and B must be nonzero");
  CheckReport rep;
  rep.identity = "regular-fe-probe";
  rep.gated = false;
  rep.truncation = {{"numerator_factors", static_cast<double>(form.numerator.size())},
                    {"denominator_factors", static_cast<double>(form.denominator.size())}};
  rep.samples = run_samples(samples, [&](Complex s) {
    const Complex t = 1.0 - s;
    Complex factor = cpow(form.A, t) / cpow(form.B, s);
    for (const auto& [alpha, mu] : form.numerator) factor *= cgamma(alpha * t + mu);
    for (const auto& [beta, omega] : form.denominator) factor *= rgamma(beta * s + omega);
    return make_sample(s, hlawka_continued(shape, s).value, factor * hlawka_continued(dual, t).value);
  });
  rep.statistics.emplace_back("max_rel_residual", rep.max_rel_residual());
  finalize(rep);
  return rep;
}

}  // namespace hlawka

#include "hlawka/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>

#include "hlawka/fourier.hpp"
#include "hlawka/funceq.hpp"
#include "hlawka/json_io.hpp"
#include "hlawka/lattice.hpp"
#include "hlawka/parallel.hpp"
#include "hlawka/shapes.hpp"
#include "hlawka/zeta.hpp"

namespace hlawka::cli {

using nlohmann::ordered_json;

namespace {

// Raised when verify finds a failing gated identity; carries the report to print.
struct VerificationFailed {
  ordered_json report;
};

struct Options {
  std::string shape = "circle";
  std::string dual;
  std::string s = "2";
  std::vector<std::string> s_list;
  double radius = 0.0;
  double tmax = 10.0;
  double tol = 0.0;
  double x = 1.0;
  bool half_weight = false;
  int qmax = 40;
  int n = 0;
  int q = 4;
  int kmax = 200;
  std::string mode;
  bool tail_corrected = false;
  bool closed_form = false;
  std::string form = "1,0,1";
  double split = 1.0;
  double phi = 0.0;
  std::string z;
  std::string which = "all";
  int samples = 10;
  std::uint64_t seed = 1;
  double c = 1.0, d = 0.0, a = 2.0, b = 1.0;
  std::string gl2 = "1,0,0,1";
  double sigma = 1.25;
  double T = 800.0;
  std::string A = "1", B = "1";
  std::vector<std::string> num, den;
  double tolerance = 0.0;
};

std::vector<double> parse_list(const std::string& text, std::size_t expected, const char* what) {
  std::vector<double> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t comma = std::min(text.find(',', pos), text.size());
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(text.data() + pos, text.data() + comma, v);
    if (ec != std::errc() || ptr != text.data() + comma || !std::isfinite(v))
      throw DomainError(std::string(what) + ": expected " + std::to_string(expected) + " comma-separated numbers");
    out.push_back(v);
    pos = comma + 1;
  }
  if (out.size() != expected)
    throw DomainError(std::string(what) + ": expected " + std::to_string(expected) + " comma-separated numbers");
  return out;
}

// "alpha,mu" with real alpha and complex mu.
std::pair<double, Complex> parse_gamma_factor(const std::string& text) {
  const std::size_t comma = text.find(',');
  if (comma == std::string::npos) throw DomainError("gamma factor: expected alpha,mu");
  const auto alpha = parse_list(text.substr(0, comma), 1, "gamma factor");
  return {alpha[0], parse_complex(text.substr(comma + 1))};
}

// Random s in Re (re_lo, re_hi), |Im| <= 10, at least 1e-2 away from every integer.
std::vector<Complex> random_samples(int count, std::uint64_t seed, double re_lo, double re_hi) {
  if (count <= 0) throw DomainError("--samples must be positive");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(re_lo, re_hi), im(-10.0, 10.0);
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < count) {
    const Complex s(re(rng), im(rng));
    if (std::abs(s - std::round(s.real())) < 1e-2) continue;
    out.push_back(s);
  }
  return out;
}

std::vector<Complex> samples_of(const Options& o, double re_lo, double re_hi) {
  if (o.s_list.empty()) return random_samples(o.samples, o.seed, re_lo, re_hi);
  std::vector<Complex> out;
  for (const auto& s : o.s_list) out.push_back(parse_complex(s));
  return out;
}

Mat2 parse_matrix(const std::string& text) {
  const auto v = parse_list(text, 4, "--gl2");
  return Mat2(v[0], v[1], v[2], v[3]);
}

QuadForm2 parse_form(const std::string& text) {
  const auto v = parse_list(text, 3, "--form");
  return {v[0], v[1], v[2]};
}

double default_radius(const Options& o, double fallback) { return o.radius > 0.0 ? o.radius : fallback; }

// Random positive-definite forms with condition number <= 50, paired with random s.
CheckReport epstein_fe_suite(int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed ^ 0x5eedULL);
  std::uniform_real_distribution<double> ent(-1.5, 1.5);
  const auto s_values = random_samples(count, seed, -2.0, 3.0);
  CheckReport merged;
  merged.identity = "epstein-fe";
  merged.tolerance = 1e-10;
  for (const Complex& s : s_values) {
    for (;;) {
      const Mat2 g(ent(rng), ent(rng), ent(rng), ent(rng));
      if (std::abs(g.a() * g.d() - g.b() * g.c()) < 0.3) continue;
      const QuadForm2 u = QuadForm2::gram(g);
      if (u.condition_number() > 50.0) continue;
      const auto r = check_epstein_fe(u.u11(), u.u12(), u.u22(), {s});
      merged.samples.push_back(r.samples.front());
      merged.statistics.emplace_back("u11", u.u11());
      merged.statistics.emplace_back("u12", u.u12());
      merged.statistics.emplace_back("u22", u.u22());
      break;
    }
  }
  merged.truncation = {{"forms", static_cast<double>(count)}, {"split_lhs", 1.0}, {"split_rhs", kDualSplit}};
  finalize(merged);
  return merged;
}

CheckReport residue_suite() {
  CheckReport rep;
  rep.identity = "residue-area";
  rep.tolerance = 1e-2;
  for (const auto& shape : {RadialShape::circle(), RadialShape::ellipse(2.0, 1.0), RadialShape::square()}) {
    SampleResidual r;
    r.s = 1.0;
    r.lhs = residue_at_one(shape).value;
    r.rhs = area(shape);
    r.abs_residual = std::abs(r.lhs - r.rhs);
    r.rel_residual = r.abs_residual / std::abs(r.rhs);
    rep.samples.push_back(r);
    rep.notes.push_back(shape.describe());
  }
  finalize(rep);
  return rep;
}

std::vector<CheckReport> verify_reports(const Options& o) {
  const std::string& w = o.which;
  std::vector<CheckReport> out;
  const bool all = w == "all";
  const int n = all && o.s_list.empty() ? std::max(o.samples, 10) : o.samples;
  Options opt = o;
  opt.samples = n;
  if (all || w == "circle-fe") {
    if (all) {
      opt.samples = std::max(o.samples, 20);
      for (double c : {1.0, 1.7}) out.push_back(check_circle_fe(c, samples_of(opt, -2.0, 3.0)));
      opt.samples = n;
    } else {
      out.push_back(check_circle_fe(o.c, samples_of(opt, -2.0, 3.0)));
    }
  }
  if (all || w == "epstein-fe") {
    if (all || o.form == "random")
      out.push_back(epstein_fe_suite(all ? std::max(o.samples, 20) : o.samples, o.seed));
    else {
      const QuadForm2 u = parse_form(o.form);
      out.push_back(check_epstein_fe(u.u11(), u.u12(), u.u22(), samples_of(opt, -2.0, 3.0)));
    }
  }
  if (all || w == "square") {
    std::vector<Complex> s = {Complex(2.0, 0.0), Complex(3.0, 0.0), Complex(1.5, 2.0)};
    if (!all && (!o.s_list.empty() || o.samples != 10)) s = samples_of(opt, 1.2, 3.0);
    out.push_back(check_square_closed_form(s, default_radius(o, 2000.0)));
  }
  if (all || w == "eq7") {
    if (all) {
      for (int q : {4, 8}) out.push_back(check_eq7(q, samples_of(opt, -2.0, 3.0)));
    } else {
      out.push_back(check_eq7(o.q, samples_of(opt, -2.0, 3.0)));
    }
  }
  if (all || w == "eq8") {
    if (all) {
      for (auto [a, b] : {std::pair{2.0, 1.0}, {1.3, 1.0}}) out.push_back(check_eq8_ellipse_fe(a, b, 0.0, samples_of(opt, -2.0, 3.0)));
    } else {
      out.push_back(check_eq8_ellipse_fe(o.a, o.b, o.phi, samples_of(opt, -2.0, 3.0)));
    }
  }
  if (all || w == "eq10") {
    const double a = all ? std::sqrt(1.2) : o.a;
    const double b = all ? 1.0 : o.b;
    const int q = all ? 1 : std::max(o.q, 1);
    std::vector<Complex> s = {Complex(2.0, 0.0), Complex(0.5, 0.0), Complex(0.3, 1.7)};
    if (!all && !o.s_list.empty()) s = samples_of(opt, -2.0, 3.0);
    for (auto& r : eq10_report(a, b, q, s)) out.push_back(std::move(r));
  }
  if (all || w == "odd-square") {
    std::vector<Complex> s = {Complex(2.0, 0.0), Complex(3.0, 0.0), Complex(2.0, 1.0)};
    if (!all && !o.s_list.empty()) s = samples_of(opt, 1.2, 3.0);
    out.push_back(check_odd_vs_square(all ? 50.0 : std::max(o.tmax, 30.0), s));
  }
  if (all || w == "residue") out.push_back(residue_suite());
  if (w == "regular-fe") {
    RegularFEForm form;
    form.A = parse_complex(o.A);
    form.B = parse_complex(o.B);
    for (const auto& f : o.num) form.numerator.push_back(parse_gamma_factor(f));
    for (const auto& f : o.den) form.denominator.push_back(parse_gamma_factor(f));
    const RadialShape shape = parse_shape(o.shape);
    const RadialShape dual = o.dual.empty() ? shape : parse_shape(o.dual);
    out.push_back(probe_regular_fe(form, shape, dual, samples_of(opt, -2.0, 3.0)));
  }
  if (out.empty()) throw DomainError("verify: unknown identity '" + w + "'");
  return out;
}

ordered_json cmd_verify(const Options& o) {
  auto reports = verify_reports(o);
  if (o.tolerance > 0.0) {
    for (auto& r : reports) {
      if (!r.gated) continue;
      r.tolerance = o.tolerance;
      finalize(r);
    }
  }
  bool pass = true;
  ordered_json failed = ordered_json::array();
  ordered_json arr = ordered_json::array();
  int gated = 0;
  for (const auto& r : reports) {
    if (r.gated) {
      ++gated;
      if (!r.pass) {
        pass = false;
        failed.push_back(r.identity);
      }
    }
    arr.push_back(to_json(r));
  }
  ordered_json out;
  if (reports.size() == 1 && o.which != "all") {
    out = arr[0];
  } else {
    out = {{"which", o.which}, {"pass", pass}, {"gated", gated}, {"failed", failed}, {"reports", arr}};
  }
  if (!pass) throw VerificationFailed{out};
  return out;
}

ordered_json cmd_act(const Options& o) {
  const RadialShape shape = parse_shape(o.shape);
  const Mat2 g = parse_matrix(o.gl2);
  const RadialShape image = act(g, shape);
  const auto iw = iwasawa_decompose(g);
  const auto ca = cartan_decompose(g);
  const int n = o.n > 0 ? o.n : 8;
  ordered_json samples = ordered_json::array();
  for (int j = 0; j < n; ++j) {
    const double phi = kTwoPi * j / n;
    const double psi = theta_g(g, phi);
    samples.push_back({{"phi", phi}, {"theta_g", psi}, {"r", shape.radius(phi)}, {"image_r", image.radius(psi)}});
  }
  return {{"input", shape.describe()},
          {"matrix", {g.a(), g.b(), g.c(), g.d()}},
          {"image", image.describe()},
          {"image_r_min", image.r_min()},
          {"image_r_max", image.r_max()},
          {"area", area(shape)},
          {"image_area", area(image)},
          {"iwasawa", {{"u", iw.u}, {"x", iw.x}, {"y", iw.y}, {"theta", iw.theta}}},
          {"cartan", {{"phi1", ca.phi1}, {"d1", ca.d1}, {"d2", ca.d2}, {"phi2", ca.phi2}}},
          {"samples", std::move(samples)}};
}

// Emits either JSON or the CSV text produced by csv().
struct Output {
  ordered_json json;
  std::string csv;
  bool is_csv = false;
};

Output dispatch(const std::string& cmd, const Options& o, bool csv) {
  Output out;
  auto want_csv = [&](const std::function<void(std::ostream&)>& write) {
    std::ostringstream os;
    write(os);
    out.csv = os.str();
    out.is_csv = true;
  };
  if (cmd == "spectrum") {
    const auto spec = build_spectrum(parse_shape(o.shape), o.tmax, o.tol);
    if (csv)
      want_csv([&](std::ostream& os) { write_spectrum_csv(os, spec); });
    else
      out.json = to_json(spec);
  } else if (cmd == "count") {
    const auto shape = parse_shape(o.shape);
    out.json = {{"shape", shape.describe()}, {"x", o.x}, {"half_weight", o.half_weight}, {"count", count_points(shape, o.x, o.half_weight)}};
  } else if (cmd == "zeta") {
    const auto shape = parse_shape(o.shape);
    const Complex s = parse_complex(o.s);
    const std::string mode = o.mode.empty() ? "direct" : o.mode;
    if (mode == "direct")
      out.json = to_json(hlawka_direct(shape, s, default_radius(o, 2000.0), o.tail_corrected));
    else if (mode == "spectrum")
      out.json = to_json(hlawka_from_spectrum(build_spectrum(shape, default_radius(o, 200.0)), s));
    else if (mode == "continued")
      out.json = to_json(hlawka_continued(shape, s));
    else
      throw DomainError("zeta: --mode must be direct, spectrum or continued");
  } else if (cmd == "fourier") {
    const Complex s = parse_complex(o.s);
    if (o.closed_form) {
      out.json = to_json(ellipse_coefficient(o.c, o.d, s, o.q, o.kmax));
    } else {
      const auto table = fourier_coeffs(parse_shape(o.shape), s, o.qmax, o.n);
      if (csv)
        want_csv([&](std::ostream& os) { write_fourier_csv(os, table); });
      else
        out.json = to_json(table);
    }
  } else if (cmd == "reconstruct") {
    const std::string mode = o.mode.empty() ? "truncated" : o.mode;
    if (mode != "truncated" && mode != "continued") throw DomainError("reconstruct: --mode must be truncated or continued");
    out.json = to_json(reconstruct_hlawka(parse_shape(o.shape), parse_complex(o.s), o.qmax,
                                          mode == "truncated" ? ReconstructMode::truncated : ReconstructMode::continued,
                                          default_radius(o, 3000.0)));
  } else if (cmd == "epstein") {
    const QuadForm2 u = parse_form(o.form);
    const Complex s = parse_complex(o.s);
    const std::string mode = o.mode.empty() ? "continued" : o.mode;
    if (mode == "direct")
      out.json = to_json(epstein_direct(u, s, default_radius(o, 2000.0), o.tail_corrected));
    else if (mode == "completed")
      out.json = to_json(epstein_completed(u, s, o.split));
    else if (mode == "continued")
      out.json = to_json(epstein_continued(u, s, o.split));
    else
      throw DomainError("epstein: --mode must be direct, completed or continued");
  } else if (cmd == "eisenstein") {
    const Complex s = parse_complex(o.s);
    if (!o.z.empty()) {
      out.json = to_json(classical_eisenstein(parse_complex(o.z), s, o.radius));
    } else {
      const std::string mode = o.mode.empty() ? "truncated" : o.mode;
      if (mode == "truncated") {
        out.json = to_json(eisenstein_fq_truncated(o.q, o.phi, s, default_radius(o, 2000.0)));
      } else if (mode == "batch") {
        ordered_json arr = ordered_json::array();
        for (const auto& r : eisenstein_fq_truncated_batch(o.qmax, s, default_radius(o, 2000.0))) arr.push_back(to_json(r));
        out.json = {{"components", std::move(arr)}};
      } else if (mode == "continued") {
        out.json = to_json(eisenstein_fq_continued(o.q, s, o.split));
      } else {
        throw DomainError("eisenstein: --mode must be truncated, batch or continued");
      }
    }
  } else if (cmd == "verify") {
    out.json = cmd_verify(o);
  } else if (cmd == "perron") {
    const auto res = perron_count_approx(parse_shape(o.shape), o.x, o.sigma, o.T, o.radius);
    if (csv)
      want_csv([&](std::ostream& os) { write_perron_csv(os, res); });
    else
      out.json = to_json(res);
  } else if (cmd == "residue") {
    const auto shape = parse_shape(o.shape);
    ordered_json j = to_json(residue_at_one(shape));
    j["area"] = area(shape);
    out.json = std::move(j);
  } else if (cmd == "act") {
    out.json = cmd_act(o);
  }
  return out;
}

void emit(const Output& result, const std::string& path, std::ostream& out) {
  const std::string text = result.is_csv ? result.csv : result.json.dump(2) + "\n";
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw DomainError("cannot open output file " + path);
  f << text;
}

}  // namespace

Complex parse_complex(std::string_view text) {
  auto bad = [&] { return DomainError("invalid complex number '" + std::string(text) + "' (expected a, a+bi or bi)"); };
  if (text.empty()) throw bad();
  auto read = [&](std::string_view part, double& v) {
    if (part == "" || part == "+") {
      v = 1.0;
      return true;
    }
    if (part == "-") {
      v = -1.0;
      return true;
    }
    const char* begin = part.data();
    if (*begin == '+') ++begin;
    const auto [ptr, ec] = std::from_chars(begin, part.data() + part.size(), v);
    return ec == std::errc() && ptr == part.data() + part.size() && std::isfinite(v);
  };
  if (text.back() != 'i') {
    double re = 0.0;
    if (!read(text, re) || text == "+" || text == "-") throw bad();
    return {re, 0.0};
  }
  const std::string_view body = text.substr(0, text.size() - 1);
  // The sign that starts the imaginary part: last +/- not at position 0 and not after an exponent marker.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = body.size(); i-- > 1;) {
    if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  double re = 0.0, im = 0.0;
  if (split == std::string_view::npos) {
    if (!read(body, im)) throw bad();
  } else {
    if (!read(body.substr(0, split), re) || body.substr(0, split).empty() || !read(body.substr(split), im)) throw bad();
  }
  return {re, im};
}

const std::vector<std::pair<std::string, std::string>>& operation_map() {
  static const std::vector<std::pair<std::string, std::string>> map = {
      {"build_spectrum", "spectrum"},
      {"write_spectrum_csv", "spectrum"},
      {"count_points", "count"},
      {"hlawka_direct", "zeta"},
      {"hlawka_from_spectrum", "zeta"},
      {"hlawka_continued", "zeta"},
      {"fourier_coeffs", "fourier"},
      {"write_fourier_csv", "fourier"},
      {"ellipse_coefficient", "fourier"},
      {"reconstruct_hlawka", "reconstruct"},
      {"epstein_direct", "epstein"},
      {"epstein_completed", "epstein"},
      {"epstein_continued", "epstein"},
      {"eisenstein_fq_truncated", "eisenstein"},
      {"eisenstein_fq_truncated_batch", "eisenstein"},
      {"eisenstein_fq_continued", "eisenstein"},
      {"classical_eisenstein", "eisenstein"},
      {"check_circle_fe", "verify"},
      {"check_epstein_fe", "verify"},
      {"check_square_closed_form", "verify"},
      {"check_eq7", "verify"},
      {"check_eq8_ellipse_fe", "verify"},
      {"check_eq10", "verify"},
      {"eq10_report", "verify"},
      {"check_odd_vs_square", "verify"},
      {"probe_regular_fe", "verify"},
      {"perron_count_approx", "perron"},
      {"write_perron_csv", "perron"},
      {"residue_at_one", "residue"},
      {"act", "act"},
      {"iwasawa_decompose", "act"},
      {"cartan_decompose", "act"},
      {"theta_g", "act"},
      {"area", "act"},
  };
  return map;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Hlawka zeta functions of star-shaped planar regions", "hlawka"};
  app.require_subcommand(1);
  Options o;
  std::string format = "json";
  std::string output;
  unsigned threads = 0;
  app.add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
  app.add_option("--output,-o", output, "write results to this file");
  app.add_option("--threads", threads, "worker thread cap (default HLAWKA_THREADS or all cores)");

  auto shape_opt = [&](CLI::App* sub) { sub->add_option("--shape", o.shape, "shape spec, e.g. ellipse:a=2,b=1,phi=0.3"); };
  auto s_opt = [&](CLI::App* sub) { sub->add_option("--s", o.s, "complex s as a+bi"); };

  auto* spectrum = app.add_subcommand("spectrum", "distinct dilation times t_k and multiplicities a_k");
  shape_opt(spectrum);
  spectrum->add_option("--tmax", o.tmax, "largest t_k");
  spectrum->add_option("--tol", o.tol, "grouping tolerance (default 1e-9 tmax)");

  auto* count = app.add_subcommand("count", "lattice points A(x) in x D");
  shape_opt(count);
  count->add_option("--x", o.x, "dilation")->required();
  count->add_flag("--half-weight", o.half_weight, "boundary points count 1/2");

  auto* zeta = app.add_subcommand("zeta", "Hlawka zeta function Z_r(s)");
  shape_opt(zeta);
  s_opt(zeta);
  zeta->add_option("--radius", o.radius, "disc radius (direct) or t_max (spectrum)");
  zeta->add_option("--mode", o.mode, "direct, spectrum or continued");
  zeta->add_flag("--tail-corrected", o.tail_corrected, "add the continuum tail");

  auto* fourier = app.add_subcommand("fourier", "Fourier coefficients of r^{2s}");
  shape_opt(fourier);
  s_opt(fourier);
  fourier->add_option("--qmax", o.qmax, "largest |q|");
  fourier->add_option("--n", o.n, "quadrature points (power of two)");
  fourier->add_flag("--closed-form", o.closed_form, "ellipse binomial series instead of quadrature");
  fourier->add_option("--c", o.c, "closed form: c = a^2/b^2");
  fourier->add_option("--d", o.d, "closed form: d = 1 - c");
  fourier->add_option("--q", o.q, "closed form: coefficient index 4q");
  fourier->add_option("--kmax", o.kmax, "closed form: last k");

  auto* reconstruct = app.add_subcommand("reconstruct", "Z_r(s) from Fourier coefficients and Eisenstein components");
  shape_opt(reconstruct);
  s_opt(reconstruct);
  reconstruct->add_option("--qmax", o.qmax, "largest |q|");
  reconstruct->add_option("--mode", o.mode, "truncated or continued");
  reconstruct->add_option("--radius", o.radius, "disc radius for truncated components");

  auto* epstein = app.add_subcommand("epstein", "Epstein zeta function of a binary form");
  epstein->add_option("--form", o.form, "u11,u12,u22");
  s_opt(epstein);
  epstein->add_option("--mode", o.mode, "direct, completed or continued");
  epstein->add_option("--radius", o.radius, "disc radius (direct)");
  epstein->add_option("--split", o.split, "theta split point");
  epstein->add_flag("--tail-corrected", o.tail_corrected, "add the continuum tail (direct)");

  auto* eisenstein = app.add_subcommand("eisenstein", "Eisenstein components E#.f_q and E(z, s)");
  eisenstein->add_option("--q", o.q, "harmonic index");
  eisenstein->add_option("--qmax", o.qmax, "batch: largest q");
  s_opt(eisenstein);
  eisenstein->add_option("--phi", o.phi, "rotation angle");
  eisenstein->add_option("--radius", o.radius, "disc radius");
  eisenstein->add_option("--mode", o.mode, "truncated, batch or continued");
  eisenstein->add_option("--split", o.split, "theta split point (continued)");
  eisenstein->add_option("--z", o.z, "classical E(z, s) at z = x+yi");

  auto* verify = app.add_subcommand("verify", "identity checks");
  verify->add_option("--which", o.which, "circle-fe, epstein-fe, square, eq7, eq8, eq10, odd-square, residue, regular-fe or all")
      ->check(CLI::IsMember({"all", "circle-fe", "epstein-fe", "square", "eq7", "eq8", "eq10", "odd-square", "residue", "regular-fe"}));
  verify->add_option("--s", o.s_list, "explicit sample points (repeatable)");
  verify->add_option("--samples", o.samples, "number of random samples");
  verify->add_option("--seed", o.seed, "random seed");
  verify->add_option("--tolerance", o.tolerance, "override the relative tolerance of gated checks");
  verify->add_option("--c", o.c, "circle radius");
  verify->add_option("--a", o.a, "ellipse semi-axis a");
  verify->add_option("--b", o.b, "ellipse semi-axis b");
  verify->add_option("--phi", o.phi, "ellipse orientation");
  verify->add_option("--q", o.q, "harmonic index");
  verify->add_option("--form", o.form, "u11,u12,u22 or random");
  verify->add_option("--radius", o.radius, "disc radius (square)");
  verify->add_option("--tmax", o.tmax, "spectrum bound (odd-square)");
  shape_opt(verify);
  verify->add_option("--dual", o.dual, "regular-fe: dual shape");
  verify->add_option("--A", o.A, "regular-fe: A");
  verify->add_option("--B", o.B, "regular-fe: B");
  verify->add_option("--num", o.num, "regular-fe: numerator factor alpha,mu (repeatable)");
  verify->add_option("--den", o.den, "regular-fe: denominator factor beta,omega (repeatable)");

  auto* perron = app.add_subcommand("perron", "truncated Perron inversion of the point count");
  shape_opt(perron);
  perron->add_option("--x", o.x, "dilation")->required();
  perron->add_option("--sigma", o.sigma, "abscissa (> 1)");
  perron->add_option("--T", o.T, "height");
  perron->add_option("--radius", o.radius, "spectrum bound (default 2x)");

  auto* residue = app.add_subcommand("residue", "residue of Z_r at s = 1");
  shape_opt(residue);

  auto* act_cmd = app.add_subcommand("act", "GL(2,R) action on a shape");
  shape_opt(act_cmd);
  act_cmd->add_option("--gl2", o.gl2, "a,b,c,d");
  act_cmd->add_option("--n", o.n, "sample angles");

  for (auto* sub : app.get_subcommands({})) sub->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kValidationError;
  }
  // Subcommand --help surfaces as an exception above; this is the selected command.
  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    if (threads > 0) set_thread_cap(threads);
    emit(dispatch(cmd, o, format == "csv"), output, out);
    return kOk;
  } catch (const VerificationFailed& v) {
    emit(Output{v.report, {}, false}, output, out);
    err << "verification failed\n";
    return kVerificationFailed;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kValidationError;
  } catch (const NumericError& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumericError;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << "\n";
    return kNumericError;
  }
}

}  // namespace hlawka::cli

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "hlawka/funceq.hpp"
#include "hlawka/parallel.hpp"
#include "hlawka/special.hpp"
#include "hlawka/zeta.hpp"

using namespace hlawka;

namespace {

std::vector<Complex> random_samples(int n, unsigned seed, double re_lo, double re_hi, double im_max) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> re(re_lo, re_hi), im(-im_max, im_max);
  std::vector<Complex> out;
  while (static_cast<int>(out.size()) < n) {
    const Complex s(re(rng), im(rng));
    if (std::abs(s - std::round(s.real())) < 1e-2) continue;
    out.push_back(s);
  }
  return out;
}

double stat(const CheckReport& r, const std::string& name) {
  for (const auto& [k, v] : r.statistics)
    if (k == name) return v;
  FAIL("missing statistic " << name);
  return 0.0;
}

}  // namespace

TEST_CASE("circle functional equation") {
  const auto samples = random_samples(20, 7, -2.0, 3.0, 10.0);
  for (double c : {1.0, 1.7}) {
    const auto r = check_circle_fe(c, samples);
    CHECK(r.pass);
    CHECK(r.max_rel_residual() <= 1e-10);
  }
  const auto half = check_circle_fe(1.0, {Complex(0.5, 0.0)});
  CHECK(half.samples[0].rel_residual < 1e-13);
  CHECK(check_circle_fe(1.0, {Complex(0.3, 1.7)}).pass);
  CHECK(check_circle_fe(1.7, {Complex(2.0, 0.0)}).pass);
  CHECK_THROWS_AS(check_circle_fe(1.0, {Complex(1.0005, 0.0)}), PoleError);
}

TEST_CASE("Epstein functional equation report") {
  const auto r = check_epstein_fe(1.3, 0.4, 0.8, random_samples(10, 3, -2.0, 3.0, 10.0));
  CHECK(r.pass);
  // A deliberately wrong dual side fails: the check is not a tautology.
  const QuadForm2 u(1.3, 0.4, 0.8);
  const Complex s(0.3, 2.0);
  const Complex wrong = epstein_completed(u, 1.0 - s).value;  // u instead of u^{-1}
  CHECK(std::abs(epstein_completed(u, s).value - wrong / std::sqrt(u.det())) > 1e-3);
}

TEST_CASE("square closed form") {
  const auto r = check_square_closed_form({Complex(2.0, 0.0), Complex(3.0, 0.0), Complex(1.5, 2.0)}, 1000);
  CHECK(r.pass);
  CHECK(std::abs(8.0 * riemann_zeta(5.0) - 8.29542204) < 1e-8);
  CHECK_THROWS_AS(check_square_closed_form({Complex(0.9, 0.0)}, 1000), DomainError);
}

TEST_CASE("harmonic functional equation") {
  const auto samples = random_samples(10, 11, -1.5, 2.5, 8.0);
  for (int q : {4, 8}) {
    const auto r = check_eq7(q, samples);
    CHECK(r.pass);
    CHECK(r.max_rel_residual() <= 1e-8);
  }
  CHECK(check_eq7(0, {Complex(0.3, 1.7), Complex(-0.7, 3.0)}).max_rel_residual() <= 1e-9);
  CHECK(check_eq7(4, {Complex(0.3, 1.7)}).pass);
  CHECK(check_eq7(8, {Complex(0.5, 5.0)}).pass);
  CHECK_THROWS_AS(check_eq7(6, samples), VanishingError);
  CHECK_THROWS_AS(check_eq7(4, {Complex(2.0, 0.0)}), PoleError);
}

TEST_CASE("ellipse functional equation") {
  const auto samples = random_samples(10, 5, -2.0, 3.0, 10.0);
  for (auto [a, b] : {std::pair{2.0, 1.0}, {1.3, 1.0}}) {
    const auto r = check_eq8_ellipse_fe(a, b, 0.0, samples);
    CHECK(r.pass);
    CHECK(stat(r, "printed_factor_rel_residual") > 1e-3);
  }
  const auto rot = check_eq8_ellipse_fe(2.0, 1.0, 0.3, {Complex(1.7, 1.0), Complex(0.7, 1.0)});
  CHECK(rot.pass);
  CHECK(stat(rot, "orientation_rel_difference") > 1e-3);
  // a = b degenerates to the circle check.
  const auto circ = check_eq8_ellipse_fe(1.4, 1.4, 0.0, {Complex(0.3, 1.7)});
  CHECK(std::abs(circ.samples[0].rel_residual - check_circle_fe(1.4, {Complex(0.3, 1.7)}).samples[0].rel_residual) < 1e-9);
  CHECK(check_eq8_ellipse_fe(2.0, 1.0, 0.0, {Complex(0.7, 1.0)}).pass);
  CHECK_THROWS_AS(check_eq8_ellipse_fe(1.0, 2.0, 0.0, samples), DomainError);
  CHECK_THROWS_AS(check_eq8_ellipse_fe(2e4, 1.0, 0.0, samples), DomainError);
}

TEST_CASE("coefficient identity report") {
  const double a = std::sqrt(1.2);
  const std::vector<Complex> samples{Complex(2.0, 0.0), Complex(0.5, 0.0), Complex(0.3, 1.7)};
  const auto reports = eq10_report(a, 1.0, 1, samples);
  REQUIRE(reports.size() == 4);
  for (const auto& r : reports) {
    CHECK(!r.gated);
    CHECK(!r.pass);
    CHECK(r.samples.size() == samples.size());
    for (const auto& x : r.samples) CHECK(std::isfinite(x.rel_residual));
  }
  // Same reading: identical left sides; the right sides differ by exactly ab.
  for (int reading = 0; reading < 2; ++reading)
    for (std::size_t i = 0; i < samples.size(); ++i) {
      const auto& p = reports[2 * reading].samples[i];
      const auto& q = reports[2 * reading + 1].samples[i];
      CHECK(p.lhs == q.lhs);
      if (std::abs(q.rhs) > 0.0) CHECK(std::abs(p.rhs / q.rhs - a) < 1e-12);
    }
  CHECK(stat(reports[0], "j_final_term_ratio_max") > 1.0);
  CHECK(!reports[0].notes.empty());
  CHECK(reports[0].notes[0].rfind("divergent", 0) == 0);
  // Degenerate ellipse: both sides vanish and the q = 0 analogue is the circle equation.
  const auto deg = check_eq10(1.3, 1.3, 1, {Complex(0.3, 1.7)}, Eq10Reading::k_form, Eq10Exponent::three_halves);
  CHECK(deg.samples[0].abs_residual == 0.0);
  CHECK(stat(deg, "q0_circle_fe_rel_residual") <= 1e-9);
  CHECK_THROWS_AS(check_eq10(2.0, 1.0, 1, samples, Eq10Reading::k_form, Eq10Exponent::three_halves), DivergenceError);
}

TEST_CASE("odd shape against the square") {
  const auto r = check_odd_vs_square(50.0, {Complex(2.0, 0.0), Complex(3.0, 0.0), Complex(2.0, 1.0)});
  CHECK(r.pass);
  CHECK(stat(r, "square_entries") == 50.0);
  CHECK(stat(r, "entry_mismatches") == 0.0);
  CHECK(stat(r, "square_vertices") == 4.0);
  CHECK(stat(r, "odd_vertices") == 7.0);
  CHECK(stat(r, "square_area") == doctest::Approx(4.0));
  CHECK(stat(r, "odd_area") == doctest::Approx(4.0));
  CHECK(stat(r, "odd_perimeter") != doctest::Approx(stat(r, "square_perimeter")));
}

TEST_CASE("Perron inversion") {
  const auto sq = perron_count_approx(RadialShape::square(), 2.5, 1.25, 800.0);
  CHECK(sq.target == 24.0);
  CHECK(std::abs(sq.approx - 24.0) <= 1.0);
  const auto ci = perron_count_approx(RadialShape::circle(), 1.5, 1.25, 800.0);
  CHECK(ci.target == 8.0);
  CHECK(std::abs(ci.approx - 8.0) <= 1.0);
  for (const auto* r : {&sq, &ci}) {
    REQUIRE(r->study.size() == 80);
    CHECK(r->study.back().envelope < r->study[4].envelope);
    CHECK(r->study.back().T == doctest::Approx(800.0));
  }
  std::ostringstream os;
  write_perron_csv(os, sq);
  CHECK(os.str().rfind("T,residual\n10,", 0) == 0);
  // Thread count does not change the result.
  set_thread_cap(1);
  const auto one = perron_count_approx(RadialShape::square(), 2.5, 1.25, 100.0);
  set_thread_cap(4);
  const auto four = perron_count_approx(RadialShape::square(), 2.5, 1.25, 100.0);
  CHECK(one.approx == four.approx);
  CHECK_THROWS_AS(perron_count_approx(RadialShape::square(), 2.5, 1.0, 100.0), DomainError);
}

TEST_CASE("residue at one equals the area") {
  CHECK(residue_at_one(RadialShape::circle()).value.real() == doctest::Approx(kPi).epsilon(1e-2));
  CHECK(residue_at_one(RadialShape::ellipse(2.0, 1.0)).value.real() == doctest::Approx(2.0 * kPi).epsilon(1e-2));
  CHECK(residue_at_one(RadialShape::square()).value.real() == doctest::Approx(4.0).epsilon(1e-2));
  CHECK(residue_at_one(RadialShape::odd()).value.real() == doctest::Approx(4.0).epsilon(1e-2));
  const auto t = RadialShape::transformed(RadialShape::circle(), Mat2(1.0, 0.5, 0.0, 2.0));
  CHECK(residue_at_one(t).value.real() == doctest::Approx(area(t)).epsilon(1e-2));
  CHECK_THROWS_AS(residue_at_one(RadialShape::cosine_series({1.0, 0.0, 0.0, 0.0, 0.1})), DomainError);
}

TEST_CASE("regular functional equation probe") {
  // The circle satisfies a regular equation with A = B = 1/pi and one Gamma factor on each side.
  RegularFEForm circle;
  circle.A = 1.0 / kPi;
  circle.B = 1.0 / kPi;
  circle.numerator = {{1.0, 0.0}};
  circle.denominator = {{1.0, 0.0}};
  const auto samples = random_samples(5, 9, -1.0, 2.0, 6.0);
  const auto good = probe_regular_fe(circle, RadialShape::circle(), RadialShape::circle(), samples);
  CHECK(!good.gated);
  CHECK(good.max_rel_residual() < 1e-10);
  // The same form applied to the square leaves large residuals.
  const auto bad = probe_regular_fe(circle, RadialShape::square(), RadialShape::square(), samples);
  CHECK(bad.max_rel_residual() > 1e-2);
  RegularFEForm invalid;
  invalid.numerator = {{-1.0, 0.0}};
  CHECK_THROWS_AS(probe_regular_fe(invalid, RadialShape::square(), RadialShape::square(), samples), DomainError);
}

TEST_CASE("reports are reproducible across thread counts") {
  const auto samples = random_samples(6, 1, -1.0, 2.0, 5.0);
  set_thread_cap(1);
  const auto a = check_eq7(4, samples);
  set_thread_cap(3);
  const auto b = check_eq7(4, samples);
  for (std::size_t i = 0; i < samples.size(); ++i) CHECK(a.samples[i].lhs == b.samples[i].lhs);
}

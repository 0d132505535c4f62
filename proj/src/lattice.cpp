#include "hlawka/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <tuple>

#include "hlawka/parallel.hpp"

namespace hlawka {

namespace {

constexpr double kBoundaryTol = 1e-9;
constexpr std::int64_t kRowsPerChunk = 64;

struct Sample {
  double t;
  std::int64_t m, n;
};

// Every nonzero p in the box [-R, R]^2 with R = ceil(bound), filtered by t(p) <= t_cut.
std::vector<Sample> enumerate(const RadialShape& shape, double bound, double t_cut) {
  const std::int64_t r = static_cast<std::int64_t>(std::ceil(bound));
  const std::int64_t rows = 2 * r + 1;
  const std::size_t n_chunks = static_cast<std::size_t>((rows + kRowsPerChunk - 1) / kRowsPerChunk);
  std::vector<std::vector<Sample>> parts(n_chunks);
  parallel_chunks(n_chunks, [&](std::size_t c) {
    const std::int64_t m_begin = -r + static_cast<std::int64_t>(c) * kRowsPerChunk;
    const std::int64_t m_end = std::min<std::int64_t>(m_begin + kRowsPerChunk, r + 1);
    auto& out = parts[c];
    for (std::int64_t m = m_begin; m < m_end; ++m)
      for (std::int64_t n = -r; n <= r; ++n) {
        if (m == 0 && n == 0) continue;
        const double t = shape.dilation(static_cast<double>(m), static_cast<double>(n));
        if (t <= t_cut) out.push_back({t, m, n});
      }
  });
  std::vector<Sample> all;
  for (auto& p : parts) all.insert(all.end(), p.begin(), p.end());
  return all;
}

}  // namespace

double dilation_time(const RadialShape& shape, LatticePoint p) {
  if (p.m == 0 && p.n == 0) throw DomainError("dilation_time: the origin is excluded");
  return shape.dilation(static_cast<double>(p.m), static_cast<double>(p.n));
}

Spectrum build_spectrum(const RadialShape& shape, double t_max, double tolerance) {
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw DomainError("build_spectrum: t_max must be positive");
  Spectrum spec;
  spec.t_max = t_max;
  spec.tolerance = tolerance > 0.0 ? tolerance : kBoundaryTol * t_max;
  auto samples = enumerate(shape, t_max * shape.r_max(), t_max + spec.tolerance);
  std::sort(samples.begin(), samples.end(), [](const Sample& l, const Sample& r) {
    return std::tie(l.t, l.m, l.n) < std::tie(r.t, r.m, r.n);
  });
  for (const Sample& s : samples) {
    if (spec.entries.empty() || s.t - spec.entries.back().t > spec.tolerance) {
      if (!spec.entries.empty() && s.t - spec.entries.back().t < 10.0 * spec.tolerance) {
        char buf[160];
        std::snprintf(buf, sizeof(buf), "groups at t=%.15g and t=%.15g are closer than 10x the tolerance",
                      spec.entries.back().t, s.t);
        spec.warnings.emplace_back(buf);
      }
      spec.entries.push_back({s.t, 0, {}});
    }
    auto& e = spec.entries.back();
    ++e.a;
    if (e.witnesses.size() < kMaxWitnesses) e.witnesses.push_back({s.m, s.n});
  }
  return spec;
}

double count_points(const RadialShape& shape, double x, bool half_weight_boundary) {
  if (!(x > 0.0) || !std::isfinite(x)) throw DomainError("count_points: x must be positive");
  const double tol = kBoundaryTol * x;
  const auto samples = enumerate(shape, x * shape.r_max(), x + tol);
  double count = 0.0;
  for (const Sample& s : samples) count += (half_weight_boundary && std::abs(s.t - x) <= tol) ? 0.5 : 1.0;
  return count;
}

void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum) {
  out << "k,t_k,a_k\n";
  char buf[64];
  for (std::size_t k = 0; k < spectrum.entries.size(); ++k) {
    std::snprintf(buf, sizeof(buf), "%.15g", spectrum.entries[k].t);
    out << (k + 1) << ',' << buf << ',' << spectrum.entries[k].a << '\n';
  }
}

}  // namespace hlawka

#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "hlawka/shapes.hpp"

namespace hlawka {

struct LatticePoint {
  std::int64_t m = 0;
  std::int64_t n = 0;
};

// t(m, n) = |(m, n)| / r(theta(m, n)); rejects the origin.
double dilation_time(const RadialShape& shape, LatticePoint p);

struct SpectrumEntry {
  double t = 0.0;        // smallest dilation time in the group
  std::int64_t a = 0;    // number of lattice points in the group
  std::vector<LatticePoint> witnesses;  // at most kMaxWitnesses
};

struct Spectrum {
  std::vector<SpectrumEntry> entries;  // strictly increasing t
  double t_max = 0.0;
  double tolerance = 0.0;  // absolute grouping tolerance
  std::vector<std::string> warnings;
};

inline constexpr std::size_t kMaxWitnesses = 8;

// Distinct dilation times up to t_max with multiplicities. Values within `tolerance` of a
// group's smallest member join that group; tolerance <= 0 selects 1e-9 * t_max.
Spectrum build_spectrum(const RadialShape& shape, double t_max, double tolerance = 0.0);

// A(x) = #{p != 0 : t(p) <= x}. With half_weight_boundary, points with |t(p) - x| <= 1e-9 x
// count 1/2 (the Perron normalization A'(x)).
double count_points(const RadialShape& shape, double x, bool half_weight_boundary = false);

// Header k,t_k,a_k; 15 significant digits.
void write_spectrum_csv(std::ostream& out, const Spectrum& spectrum);

}  // namespace hlawka

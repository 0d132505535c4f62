#pragma once

#include <cmath>
#include <complex>
#include <string>
#include <utility>
#include <vector>

#include "hlawka/error.hpp"

namespace hlawka {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;
inline constexpr double kTwoPi = 2.0 * kPi;

inline bool is_finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

// NaN/inf never leave the library as values.
inline Complex require_finite(Complex z, const char* what) {
  if (!is_finite(z)) throw NumericError(std::string(what) + ": non-finite result");
  return z;
}

// Named truncation parameters, kept in insertion order so serialization is stable.
using Truncation = std::vector<std::pair<std::string, double>>;

// A computed value together with how it was truncated and a bound on what was dropped.
struct EvalResult {
  Complex value{};
  double error_estimate = 0.0;
  Truncation truncation;
  std::vector<std::string> warnings;
};

}  // namespace hlawka

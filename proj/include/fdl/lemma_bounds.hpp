#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fdl/natural.hpp"

namespace fdl::arith {

/// Grid points for numerically checking two analytic inequalities:
///
///   (1 - x)^(-1/x) >= e (1 + x/2)                       for x in (0, 1]
///   0 <= (r - (k-1)/2) - (r falling k)^(1/k) <= k^2/(r-k)  for k >= 2, r > k
struct LemmaGrid {
  std::vector<Rational> x_values;
  struct FallingPoint {
    std::uint64_t k;
    Rational r;
  };
  std::vector<FallingPoint> falling_points;
  std::uint32_t precision_bits = 128;
  std::uint32_t guard_bits = 8;

  /// x = j/1000 for j = 1..1000; k in [2, 50] with r in {k+1, ..., k+100}
  /// plus r = 10^3 and r = 10^6.
  static LemmaGrid defaults(std::uint32_t precision_bits = 128);
};

enum class LemmaKind { ExpInequality, FallingRoot };

struct LemmaPoint {
  LemmaKind kind = LemmaKind::ExpInequality;
  std::uint64_t k = 0;  // FallingRoot only
  Rational point;       // x or r
  /// Signed slack of each inequality; +inf is reported as infinity().
  /// ExpInequality fills only lower_margin.
  double lower_margin = 0.0;
  double upper_margin = 0.0;
  bool pass = false;
};

struct LemmaReport {
  std::vector<LemmaPoint> points;
  std::uint32_t precision_bits = 0;
  std::uint32_t guard_bits = 0;
  /// Margins are accepted down to -2 * 2^-(P - guard).
  int tolerance_exponent = 0;  // tolerance = 2^tolerance_exponent
  double min_margin = 0.0;
  bool pass = false;
};

/// Evaluates every grid point at the configured binary precision. Throws
/// std::invalid_argument for x outside (0, 1], k < 2, r <= k, or precision
/// below 64 bits.
LemmaReport verify_lemma_bounds(const LemmaGrid& grid);

}  // namespace fdl::arith

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "fdl/natural.hpp"

namespace fdl::equidist {

/// frac((a!)^(1/k)) as frac_num / 2^P, 0 <= frac_num < 2^P.
struct Sample {
  std::uint64_t a = 0;
  std::uint64_t k = 0;
  Natural frac_num;

  friend bool operator==(const Sample&, const Sample&) = default;
};

/// Multiset of fractional parts keyed by (a, k), 2 <= a <= A, 2 <= k <= K,
/// ordered by (a, k). All samples share one precision.
struct SampleSet {
  std::vector<Sample> samples;
  std::uint64_t max_a = 0;  // A
  std::uint64_t max_k = 0;  // K
  std::uint32_t precision_bits = 0;

  std::size_t size() const { return samples.size(); }
  friend bool operator==(const SampleSet&, const SampleSet&) = default;
};

/// How K is chosen from A: K = max(2, floor(coefficient * log(log A)))
/// with logarithms in log_base, unless fixed_k is set.
struct KPolicy {
  double coefficient = 5.0;
  double log_base = 0.0;  // 0 selects natural logarithms
  std::optional<std::uint64_t> fixed_k;

  std::uint64_t max_k(std::uint64_t max_a) const;
};

/// Builds the sample set, computing a! incrementally. Workers own disjoint
/// runs of a and seed their factorial from a binary-split product, so the
/// output does not depend on the thread count. Throws std::invalid_argument
/// for A < 3 or P < 64.
SampleSet generate_samples(std::uint64_t max_a, std::uint32_t precision_bits,
                           const KPolicy& policy = {}, unsigned threads = 1);

/// Subinterval of [0, 1] with exact rational endpoints.
struct Interval {
  Rational lo;
  Rational hi;
  bool lo_open = false;
  bool hi_open = false;

  static Interval closed(Rational lo, Rational hi);
  /// Throws std::invalid_argument unless 0 <= lo <= hi <= 1.
  void validate() const;
  Rational length() const { return hi - lo; }
  bool contains(const Rational& v) const;
};

/// Exact number of samples inside the interval.
std::uint64_t interval_count(const SampleSet& set, const Interval& interval);

/// D* = max_i max(i/n - x_(i), x_(i) - (i-1)/n) over the sorted values.
/// Throws std::invalid_argument for an empty input.
Rational star_discrepancy(std::span<const Rational> values);
Rational star_discrepancy(const SampleSet& set);

/// Mod-1 window a sample must hit for a class-k solution with c >= c_floor.
/// Odd k: [max(0, 1 - w), 1]; even k: [max(0, 1/2 - w), 1/2]; w = k^2/(c_floor - k).
struct CriticalInterval {
  std::uint64_t k = 0;
  std::uint64_t c_floor = 0;
  Rational width;
  Rational lo;
  Rational hi;

  /// Membership of a fractional part in [0, 1), taken mod 1: the odd window
  /// also covers 0 (= 1 mod 1), and an even window with 1/2 - w < 0 wraps
  /// to [3/2 - w, 1).
  bool contains(const Rational& frac) const;
};

CriticalInterval critical_interval(std::uint64_t k, std::uint64_t c_floor);

struct CriticalHits {
  std::optional<CriticalInterval> odd;  // absent when K < 3
  CriticalInterval even;
  std::uint64_t odd_hits = 0;
  std::uint64_t even_hits = 0;
  std::uint64_t odd_samples = 0;
  std::uint64_t even_samples = 0;
  /// (a, k) of every sample inside its parity window, in sample order.
  std::vector<std::pair<std::uint64_t, std::uint64_t>> hits;
};

/// Counts samples inside the widest window of their parity (largest odd and
/// largest even k <= K) at c_floor = gamma. A sample outside its window rules
/// out a class-k solution with that a and c >= gamma. Throws
/// std::invalid_argument for gamma <= K.
CriticalHits critical_hits(const SampleSet& set, std::uint64_t gamma);

/// ceil(sqrt(A)).
std::uint64_t default_gamma(std::uint64_t max_a);

struct ConjectureRow {
  std::uint64_t max_a = 0;
  std::uint64_t size = 0;
  Interval interval;
  std::uint64_t count = 0;
  Rational deviation;  // count - size * |I|
  std::vector<double> epsilons;
  std::vector<double> thresholds;  // size^(1 - eps)
};

/// Empirical deviation table; no pass/fail.
std::vector<ConjectureRow> conjecture_report(std::span<const std::uint64_t> max_a_list,
                                             std::span<const double> epsilons,
                                             std::span<const Interval> intervals,
                                             std::uint32_t precision_bits,
                                             const KPolicy& policy = {}, unsigned threads = 1);

/// Same table over an already generated set.
std::vector<ConjectureRow> conjecture_rows(const SampleSet& set, std::span<const double> epsilons,
                                           std::span<const Interval> intervals);

}  // namespace fdl::equidist

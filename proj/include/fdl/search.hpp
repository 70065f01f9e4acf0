#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "fdl/natural.hpp"

namespace fdl::search {

/// A validated solution of a! b! = c! with a <= b, of class k = c - b.
/// Class-1 solutions (b = a! - 1, c = a!) are the trivial family.
struct Solution {
  std::uint64_t a = 0;
  std::uint64_t b = 0;
  std::uint64_t c = 0;
  std::uint64_t k = 0;
  bool trivial = false;

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// An integer root c > k of x(x-1)...(x-k+1) = a!. Only hits with
/// b = c - k >= a are solutions under the a <= b convention.
struct RootHit {
  std::uint64_t a = 0;
  std::uint64_t k = 0;
  Natural c;
  bool valid_solution = false;

  friend bool operator==(const RootHit&, const RootHit&) = default;
};

class NotASolution : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Every solution with a_min <= a <= b < c <= c_max, sorted by (c, a).
/// Walks each c downward through c(c-1)...(c-k+1) and merges the running
/// product against the factorial table.
std::vector<Solution> brute_force_search(std::uint64_t c_max, std::uint64_t a_min = 2,
                                         unsigned threads = 1);

/// Every (a, k, c) with 2 <= a <= a_max, k_min <= k < c <= c_max and
/// c falling k = a!, including hits that violate a <= b. Sorted by (a, k).
std::vector<RootHit> brute_force_root_hits(std::uint64_t c_max, std::uint64_t a_max,
                                           std::uint64_t k_min = 2, unsigned threads = 1);

/// The unique c > k with c falling k = a!, if any. Only candidates in a
/// short window above floor((a!)^(1/k)) + (k-1)/2 are tested exactly.
/// Throws std::invalid_argument for a < 2 or k < 2.
std::optional<RootHit> interval_search(std::uint64_t a, std::uint64_t k);

/// Candidate window [lo, hi] tested by interval_search.
struct SearchWindow {
  Natural lo;
  Natural hi;
};
SearchWindow interval_window(std::uint64_t a, std::uint64_t k);

/// Validates a! b! = c!, orders (a, b) so a <= b, and derives the class.
/// Throws NotASolution when the identity fails and std::invalid_argument
/// for class-0 identities (a <= 1, b = c).
Solution classify(std::uint64_t a, std::uint64_t b, std::uint64_t c);

/// k < a < k + 2 ceil(log2 c). Throws std::invalid_argument when k < 2.
bool bound_check(const Solution& sol);

/// a - k == s_p(a) + s_p(b) - s_p(c).
bool digit_sum_identity_check(const Solution& sol, std::uint64_t p);

/// nu_p(a!) + nu_p(b!) == nu_p(c!).
bool valuation_identity_check(const Solution& sol, std::uint64_t p);

}  // namespace fdl::search

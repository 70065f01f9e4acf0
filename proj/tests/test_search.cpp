#include <doctest.h>

#include <map>
#include <set>
#include <tuple>

#include "fdl/arith.hpp"
#include "fdl/search.hpp"

using namespace fdl;
using namespace fdl::search;

namespace {

using Triple = std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>;

std::set<Triple> triples(const std::vector<Solution>& sols) {
  std::set<Triple> out;
  for (const auto& s : sols) out.emplace(s.a, s.b, s.c);
  return out;
}

// Independent oracle: scan (a, b) pairs with plain GMP factorials.
std::set<Triple> pair_oracle(std::uint64_t c_max) {
  std::map<std::string, std::uint64_t> by_value;
  std::vector<Integer> f(c_max + 1);
  f[0] = 1;
  for (std::uint64_t n = 1; n <= c_max; ++n) {
    f[n] = f[n - 1] * static_cast<unsigned long>(n);
    by_value[f[n].get_str(16)] = n;
  }
  std::set<Triple> out;
  for (std::uint64_t a = 2; a <= c_max; ++a) {
    for (std::uint64_t b = a; b < c_max; ++b) {
      const Integer prod = f[a] * f[b];
      if (cmp(prod, f[c_max]) > 0) break;
      auto it = by_value.find(prod.get_str(16));
      if (it != by_value.end() && it->second > b) out.emplace(a, b, it->second);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("brute force examples") {
  CHECK(brute_force_search(5).empty());
  const auto s10 = brute_force_search(10);
  CHECK(triples(s10) == std::set<Triple>{{3, 5, 6}, {6, 7, 10}});
  const auto s25 = brute_force_search(25);
  CHECK(triples(s25) == std::set<Triple>{{3, 5, 6}, {6, 7, 10}, {4, 23, 24}});
  // sorted by (c, a)
  CHECK(s25[0].c == 6);
  CHECK(s25[1].c == 10);
  CHECK(s25[2].c == 24);
}

TEST_CASE("brute force agrees with the pair oracle up to 160") {
  CHECK(triples(brute_force_search(160)) == pair_oracle(160));
}

TEST_CASE("brute force is thread-count independent") {
  const auto one = brute_force_search(800, 2, 1);
  CHECK(one == brute_force_search(800, 2, 3));
  CHECK(one == brute_force_search(800, 2, 8));
}

TEST_CASE("a_min filters small a") {
  const auto s = brute_force_search(800, 5);
  for (const auto& sol : s) CHECK(sol.a >= 5);
  CHECK(triples(s) == std::set<Triple>{{6, 7, 10}, {5, 119, 120}, {6, 719, 720}});
}

TEST_CASE("interval search examples") {
  auto h = interval_search(6, 3);
  REQUIRE(h.has_value());
  CHECK(h->c == Natural(10));
  CHECK(h->valid_solution);
  CHECK_FALSE(interval_search(6, 2).has_value());
  h = interval_search(7, 4);
  REQUIRE(h.has_value());
  CHECK(h->c == Natural(10));
  CHECK_FALSE(h->valid_solution);
  CHECK_THROWS_AS(interval_search(1, 3), std::invalid_argument);
  CHECK_THROWS_AS(interval_search(5, 1), std::invalid_argument);
}

TEST_CASE("interval search finds class-1 style roots for large k") {
  // 24 * 23 * ... * 5 = 24!/4! = 23!
  auto h = interval_search(23, 20);
  REQUIRE(h.has_value());
  CHECK(h->c == Natural(24));
  CHECK(h->valid_solution == false);
}

TEST_CASE("interval window contains every brute-force root") {
  for (const auto& hit : brute_force_root_hits(2000, 30)) {
    const auto w = interval_window(hit.a, hit.k);
    CHECK(w.lo <= hit.c);
    CHECK(hit.c <= w.hi);
  }
}

TEST_CASE("root hits satisfy the falling-factorial identity") {
  const auto hits = brute_force_root_hits(2000, 30);
  CHECK_FALSE(hits.empty());
  for (const auto& h : hits) {
    CHECK(arith::falling_factorial(h.c, h.k) == arith::factorial(h.a));
    const std::uint64_t c = h.c.to_u64();
    CHECK(h.valid_solution == (c - h.k >= h.a));
    if (h.valid_solution) {
      for (std::uint64_t p : {2, 3, 5}) {
        CHECK(arith::nu_p_factorial(h.a, p) + arith::nu_p_factorial(c - h.k, p) == arith::nu_p_factorial(c, p));
      }
    }
  }
}

TEST_CASE("classify") {
  auto s = classify(3, 5, 6);
  CHECK(s.k == 1);
  CHECK(s.trivial);
  s = classify(7, 6, 10);
  CHECK(s.a == 6);
  CHECK(s.b == 7);
  CHECK(s.k == 3);
  CHECK_FALSE(s.trivial);
  CHECK_THROWS_AS(classify(2, 3, 5), NotASolution);
  CHECK_THROWS_AS(classify(2, 8, 10), NotASolution);
  CHECK_THROWS_AS(classify(1, 7, 7), std::invalid_argument);
}

TEST_CASE("bound and identity checks") {
  const auto s = classify(6, 7, 10);
  CHECK(bound_check(s));
  CHECK_THROWS_AS(bound_check(classify(3, 5, 6)), std::invalid_argument);
  for (std::uint64_t p : {2, 3, 5, 7}) CHECK(digit_sum_identity_check(s, p));
  CHECK(digit_sum_identity_check(classify(3, 5, 6), 2));
  for (std::uint64_t p : {2, 3, 5}) CHECK(valuation_identity_check(s, p));
  for (const auto& sol : brute_force_search(2000)) {
    CHECK(sol.a != sol.b);
    CHECK(sol.b + sol.k == sol.c);
    CHECK(arith::factorial(sol.a) * arith::factorial(sol.b) == arith::factorial(sol.c));
    for (std::uint64_t p : {2, 3, 5, 7}) CHECK(digit_sum_identity_check(sol, p));
    if (sol.k >= 2) CHECK(bound_check(sol));
    if (sol.k == 1) CHECK(sol.c == arith::factorial(sol.a).to_u64());
  }
}

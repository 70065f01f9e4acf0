#include "fdl/search.hpp"

#include <algorithm>
#include <bit>

#include "fdl/arith.hpp"
#include "fdl/parallel.hpp"

namespace fdl::search {

namespace {

std::vector<const Natural*> factorial_refs(std::uint64_t n_max) {
  std::vector<const Natural*> refs;
  refs.reserve(n_max + 1);
  for (std::uint64_t n = 0; n <= n_max; ++n) refs.push_back(&arith::factorial(n));
  return refs;
}

}  // namespace

std::vector<Solution> brute_force_search(std::uint64_t c_max, std::uint64_t a_min,
                                         unsigned threads) {
  if (c_max < 2) return {};
  a_min = std::max<std::uint64_t>(a_min, 2);
  const auto fact = factorial_refs(c_max);

  std::vector<std::vector<Solution>> per_c(c_max + 1);
  parallel_for(3, c_max + 1, threads, [&](std::size_t c) {
    Natural product(1);
    std::uint64_t a = a_min;
    for (std::uint64_t k = 1; k < c; ++k) {
      const std::uint64_t b = c - k;
      product *= static_cast<std::uint64_t>(b + 1);
      // Beyond this point a! = c!/b! > b!, so a > b.
      if (product > *fact[b]) break;
      while (a <= b && *fact[a] < product) ++a;
      if (a > b) break;
      if (*fact[a] == product) per_c[c].push_back(classify(a, b, c));
    }
  });

  std::vector<Solution> out;
  for (auto& bucket : per_c) out.insert(out.end(), bucket.begin(), bucket.end());
  std::sort(out.begin(), out.end(), [](const Solution& x, const Solution& y) {
    return x.c != y.c ? x.c < y.c : x.a < y.a;
  });
  return out;
}

std::vector<RootHit> brute_force_root_hits(std::uint64_t c_max, std::uint64_t a_max,
                                           std::uint64_t k_min, unsigned threads) {
  if (c_max < 2 || a_max < 2) return {};
  k_min = std::max<std::uint64_t>(k_min, 1);
  const auto fact = factorial_refs(std::max(c_max, a_max));
  const Natural& ceiling = *fact[a_max];

  std::vector<std::vector<RootHit>> per_c(c_max + 1);
  parallel_for(2, c_max + 1, threads, [&](std::size_t c) {
    Natural product(1);
    std::uint64_t a = 2;
    for (std::uint64_t k = 1; k < c; ++k) {
      product *= static_cast<std::uint64_t>(c - k + 1);
      if (product > ceiling) break;
      if (k < k_min) continue;
      while (a <= a_max && *fact[a] < product) ++a;
      if (a > a_max) break;
      if (*fact[a] == product) {
        per_c[c].push_back(RootHit{a, k, Natural(c), c - k >= a});
      }
    }
  });

  std::vector<RootHit> out;
  for (auto& bucket : per_c) out.insert(out.end(), bucket.begin(), bucket.end());
  std::sort(out.begin(), out.end(), [](const RootHit& x, const RootHit& y) {
    return x.a != y.a ? x.a < y.a : x.k < y.k;
  });
  return out;
}

SearchWindow interval_window(std::uint64_t a, std::uint64_t k) {
  if (a < 2 || k < 2) throw std::invalid_argument("interval_search: needs a >= 2 and k >= 2");
  const Natural r = arith::integer_kth_root(arith::factorial(a), k).root;
  const std::uint64_t half = k / 2;  // ceil((k - 1) / 2)

  // Lower guard of 1 absorbs truncation of the root.
  Natural lo = r + Natural(half);
  lo = lo.is_zero() ? lo : lo - Natural(1);
  if (lo <= Natural(k)) lo = Natural(k + 1);

  // ceil(k^2 / max(1, r - k))
  const Natural k2(k * k);
  Natural denom = r > Natural(k) ? r - Natural(k) : Natural(1);
  Natural slack = (k2 + denom - Natural(1)) / denom;
  Natural hi = r + Natural(half) + Natural(2) + slack;
  return {std::move(lo), std::move(hi)};
}

std::optional<RootHit> interval_search(std::uint64_t a, std::uint64_t k) {
  const SearchWindow w = interval_window(a, k);
  const Natural& target = arith::factorial(a);
  if (w.lo > w.hi) return std::nullopt;

  // x falling k is increasing for x >= k, so the scan can stop once the
  // product passes a!.
  Natural c = w.lo;
  Natural value = arith::falling_factorial(c, k);
  for (;;) {
    const auto order = value <=> target;
    if (order == 0) {
      const bool valid = c - Natural(k) >= Natural(a);
      return RootHit{a, k, c, valid};
    }
    if (order > 0 || c >= w.hi) return std::nullopt;
    // (c+1)^(k) = c^(k) * (c+1) / (c+1-k), exact.
    c += Natural(1);
    value *= c;
    value /= c - Natural(k);
  }
}

Solution classify(std::uint64_t a, std::uint64_t b, std::uint64_t c) {
  if (a > b) std::swap(a, b);
  if (arith::factorial(a) * arith::factorial(b) != arith::factorial(c)) {
    throw NotASolution("not a solution of a!b! = c!");
  }
  if (c == b) throw std::invalid_argument("class-0 identity (a <= 1), not a solution class");
  const std::uint64_t k = c - b;
  return Solution{a, b, c, k, k <= 1};
}

bool bound_check(const Solution& sol) {
  if (sol.k < 2) throw std::invalid_argument("bound_check: requires a class k >= 2 solution");
  const std::uint64_t ceil_log2_c = std::bit_width(sol.c - 1);
  return sol.k < sol.a && sol.a < sol.k + 2 * ceil_log2_c;
}

bool digit_sum_identity_check(const Solution& sol, std::uint64_t p) {
  const auto s = [p](std::uint64_t n) {
    return static_cast<std::int64_t>(arith::digit_sum(Natural(n), p));
  };
  const std::int64_t lhs = static_cast<std::int64_t>(sol.a) - static_cast<std::int64_t>(sol.k);
  return lhs == s(sol.a) + s(sol.b) - s(sol.c);
}

bool valuation_identity_check(const Solution& sol, std::uint64_t p) {
  return arith::nu_p_factorial(sol.a, p) + arith::nu_p_factorial(sol.b, p) ==
         arith::nu_p_factorial(sol.c, p);
}

}  // namespace fdl::search

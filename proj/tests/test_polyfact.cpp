#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "fdl/arith.hpp"
#include "fdl/modular.hpp"
#include "fdl/polyfact.hpp"
#include "fdl/search.hpp"

using namespace fdl;
using namespace fdl::polyfact;

namespace {

IntPoly poly(std::initializer_list<long> c) {
  std::vector<Integer> v;
  for (long x : c) v.emplace_back(x);
  return IntPoly(std::move(v));
}

IntPoly product(const std::vector<IntPoly>& fs) {
  IntPoly acc = IntPoly::constant(1);
  for (const auto& f : fs) acc = acc * f;
  return acc;
}

Integer neg_factorial(std::uint64_t a) { return Integer(-arith::factorial(a).value()); }

}  // namespace

TEST_CASE("falling to monomial expansions") {
  CHECK(falling_to_monomial(0, Integer(5)) == IntPoly::constant(6));
  CHECK(falling_to_monomial(2, Integer(1)) == poly({1, -1, 1}));
  CHECK(falling_plus_one(4) == poly({1, -6, 11, -6, 1}));
  CHECK(falling_plus_one(4) == poly({1, -3, 1}) * poly({1, -3, 1}));
  CHECK(falling_plus_one(2).to_string() == "x^2 - x + 1");
}

TEST_CASE("falling expansion evaluates like the falling factorial") {
  for (std::uint64_t k = 0; k <= 30; ++k) {
    const IntPoly p = falling_to_monomial(k, Integer(-7));
    for (std::uint64_t x = 0; x <= k; ++x) {
      CHECK(p.eval(Integer(static_cast<unsigned long>(x))) ==
            arith::falling_factorial(Natural(x), k).value() - 7);
    }
  }
}

TEST_CASE("integer polynomial arithmetic") {
  const IntPoly a = poly({-1, 0, 1});
  const IntPoly b = poly({1, 1});
  CHECK(*exact_divide(a, b) == poly({-1, 1}));
  CHECK_FALSE(exact_divide(a, poly({2, 1})).has_value());
  CHECK(gcd(a, poly({1, 2, 1})) == b);
  CHECK(poly({2, 4, 6}).content() == 2);
  CHECK(poly({-2, 4, -6}).primitive_part() == poly({1, -2, 3}));
  CHECK(poly({3, 2, 1}).derivative() == poly({2, 2}));
}

TEST_CASE("factor degrees mod p") {
  CHECK(factor_degrees_mod_p(poly({1, -1, 1}), 5) == std::vector<unsigned>{2});
  CHECK(factor_degrees_mod_p(poly({1, -1, 1}), 7) == std::vector<unsigned>{1, 1});
  CHECK(factor_degrees_mod_p(falling_plus_one(4), 7) == std::vector<unsigned>{2, 2});
  CHECK_THROWS_AS(factor_degrees_mod_p(poly({1, 0, 5}), 5), std::invalid_argument);
  CHECK_THROWS_AS(factor_degrees_mod_p(poly({1, 0, 1}), 9), std::invalid_argument);
}

TEST_CASE("factor degrees sum to the degree and match root counts") {
  for (std::uint64_t k = 2; k <= 14; ++k) {
    const IntPoly f = falling_plus_one(k);
    for (std::uint64_t p : modular::primes_up_to(300)) {
      const auto d = factor_degrees_mod_p(f, p);
      CHECK(std::accumulate(d.begin(), d.end(), 0U) == k);
      // linear factors counted with multiplicity bound the distinct roots
      const auto ones = static_cast<std::size_t>(std::count(d.begin(), d.end(), 1U));
      if (p > k) CHECK(ones >= modular::falling_roots_mod_p(k, -1, p).size());
    }
  }
}

TEST_CASE("integer roots") {
  CHECK(*rational_root(falling_to_monomial(3, Integer(-720))) == 10);
  CHECK(*rational_root(falling_to_monomial(4, Integer(-5040))) == 10);
  CHECK_FALSE(rational_root(poly({1, -1, 1})).has_value());
  CHECK_THROWS_AS(rational_root(IntPoly()), std::invalid_argument);
  CHECK(integer_roots(poly({-6, 11, -6, 1})) == std::vector<Integer>{1, 2, 3});
  CHECK(integer_roots(poly({0, 0, -4, 0, 1})) == std::vector<Integer>{-2, 0, 2});
  CHECK(integer_roots(poly({-12, 4, 3})).empty());
  CHECK(integer_roots(poly({4, 4, 1})) == std::vector<Integer>{-2});
}

TEST_CASE("integer roots agree with the interval solver") {
  for (std::uint64_t a = 2; a <= 30; ++a) {
    for (std::uint64_t k = 2; k <= 40; ++k) {
      const auto roots = integer_roots(falling_to_monomial(k, neg_factorial(a)));
      std::vector<Integer> above;
      for (const auto& r : roots) {
        if (cmp(r, Integer(static_cast<unsigned long>(k))) > 0) above.push_back(r);
      }
      const auto hit = search::interval_search(a, k);
      REQUIRE(above.size() == (hit ? 1U : 0U));
      if (hit) CHECK(above[0] == hit->c.value());
    }
  }
}

TEST_CASE("irreducibility examples") {
  const auto v2 = is_irreducible_over_z(falling_plus_one(2));
  CHECK(v2.status == IrredStatus::Irreducible);
  CHECK(verify_certificate(falling_plus_one(2), v2));
  CHECK(factor_degrees_mod_p(falling_plus_one(2), 5) == std::vector<unsigned>{2});

  const auto v4 = is_irreducible_over_z(falling_plus_one(4));
  CHECK(v4.status == IrredStatus::Reducible);
  REQUIRE(v4.certificate.factors.size() == 2);
  CHECK(v4.certificate.factors[0] == poly({1, -3, 1}));
  CHECK(v4.certificate.factors[1] == poly({1, -3, 1}));
  CHECK(verify_certificate(falling_plus_one(4), v4));

  const IntPoly p20 = falling_to_monomial(20, neg_factorial(23));
  const auto v20 = is_irreducible_over_z(p20);
  CHECK(v20.status == IrredStatus::Reducible);
  CHECK(v20.certificate.root == Integer(24));
  CHECK(verify_certificate(p20, v20));

  CHECK(is_irreducible_over_z(poly({3, 1})).status == IrredStatus::Irreducible);
  CHECK_THROWS_AS(is_irreducible_over_z(poly({2, 4})), std::invalid_argument);
  CHECK_THROWS_AS(is_irreducible_over_z(IntPoly::constant(3)), std::invalid_argument);
}

TEST_CASE("F_k is irreducible except at k = 4") {
  for (std::uint64_t k = 2; k <= 20; ++k) {
    const auto f = falling_plus_one(k);
    const auto v = is_irreducible_over_z(f);
    CHECK(v.status == (k == 4 ? IrredStatus::Reducible : IrredStatus::Irreducible));
    CHECK(verify_certificate(f, v));
    if (v.certificate.kind == IrredCertificate::Kind::IrreducibleModP) {
      CHECK(factor_degrees_mod_p(f, v.certificate.primes[0]) == std::vector<unsigned>{static_cast<unsigned>(k)});
    }
  }
}

TEST_CASE("recombination finds hidden factorizations") {
  // products of irreducibles with no integer root and degree patterns that
  // split mod every prime
  const IntPoly a = poly({1, 0, 1});      // x^2 + 1
  const IntPoly b = poly({-2, 0, 1});     // x^2 - 2
  const IntPoly c = poly({1, -1, 0, 1});  // x^3 - x + 1
  for (const IntPoly& f : {a * b, a * b * c, a * c, poly({1, 0, 0, 0, 1}) * poly({-3, 0, 1})}) {
    const auto v = is_irreducible_over_z(f);
    REQUIRE(v.status == IrredStatus::Reducible);
    CHECK(product(v.certificate.factors) == f);
    CHECK(verify_certificate(f, v));
  }
  // x^4 + 1 is irreducible but splits mod every prime
  const auto v = is_irreducible_over_z(poly({1, 0, 0, 0, 1}));
  CHECK(v.status == IrredStatus::Irreducible);
  CHECK(verify_certificate(poly({1, 0, 0, 0, 1}), v));
}

TEST_CASE("random products are found reducible") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    const auto rand_poly = [&](int deg) {
      std::vector<Integer> c(static_cast<std::size_t>(deg) + 1);
      for (auto& v : c) v = static_cast<long>(rng() % 21) - 10;
      c.back() = 1 + static_cast<long>(rng() % 3);
      return IntPoly(std::move(c)).primitive_part();
    };
    const IntPoly f = rand_poly(2 + static_cast<int>(rng() % 4)) * rand_poly(2 + static_cast<int>(rng() % 4));
    const auto v = is_irreducible_over_z(f.primitive_part());
    CHECK(v.status == IrredStatus::Reducible);
    CHECK(verify_certificate(f.primitive_part(), v));
  }
}

TEST_CASE("certificate verification rejects tampering") {
  auto v = is_irreducible_over_z(falling_plus_one(4));
  v.certificate.factors[0] = poly({1, -2, 1});
  CHECK_FALSE(verify_certificate(falling_plus_one(4), v));
  auto w = is_irreducible_over_z(falling_plus_one(2));
  w.certificate.primes = {7};
  CHECK_FALSE(verify_certificate(falling_plus_one(2), w));
}

TEST_CASE("exception scan") {
  const auto scan = exception_scan(30, 20);
  CHECK(scan.unknown.empty());
  REQUIRE(scan.reducible.size() == 3);
  CHECK((scan.reducible[0].k == 3 && scan.reducible[0].a == 6));
  CHECK((scan.reducible[1].k == 4 && scan.reducible[1].a == 7));
  CHECK((scan.reducible[2].k == 20 && scan.reducible[2].a == 23));
  for (const auto& e : scan.reducible) {
    CHECK(verify_certificate(falling_to_monomial(e.k, neg_factorial(e.a)), e.verdict));
  }
  const auto small = exception_scan(10, 3);
  REQUIRE(small.reducible.size() == 1);
  CHECK(small.reducible[0].k == 3);
  CHECK(exception_scan(5, 1).reducible.empty());
  CHECK(exception_scan(30, 20, {}, 1).reducible.size() == exception_scan(30, 20, {}, 4).reducible.size());
}

TEST_CASE("class-1 family members are roots") {
  // t = 4 sits inside the scan; t = 3 gives (k, a) = (3, 5) with a < k + 3,
  // so its polynomial is checked directly.
  const auto scan = exception_scan(23, 20);
  bool found = false;
  for (const auto& e : scan.reducible) found |= (e.k == 20 && e.a == 23 && e.verdict.certificate.root == 24);
  CHECK(found);
  CHECK(*rational_root(falling_to_monomial(3, neg_factorial(5))) == 6);
}

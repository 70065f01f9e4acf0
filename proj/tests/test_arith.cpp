#include <doctest.h>

#include <random>
#include <thread>
#include <stdexcept>

#include "fdl/arith.hpp"

using namespace fdl;
using namespace fdl::arith;

namespace {

// Independent oracles built directly on GMP primitives.
Integer gmp_factorial(unsigned long n) {
  Integer r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

Integer gmp_root(const Integer& n, unsigned long k) {
  Integer r;
  mpz_root(r.get_mpz_t(), n.get_mpz_t(), k);
  return r;
}

Integer gmp_pow(const Integer& b, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

std::uint64_t legendre_sum(std::uint64_t n, std::uint64_t p) {
  std::uint64_t total = 0;
  for (std::uint64_t q = p; q <= n; q *= p) {
    total += n / q;
    if (q > n / p) break;
  }
  return total;
}

}  // namespace

TEST_CASE("natural rejects negatives and malformed decimals") {
  CHECK_THROWS_AS(Natural(Integer(-1)), std::domain_error);
  CHECK_THROWS_AS(Natural::from_decimal("-3"), std::invalid_argument);
  CHECK_THROWS_AS(Natural::from_decimal("012"), std::invalid_argument);
  CHECK_THROWS_AS(Natural::from_decimal(""), std::invalid_argument);
  CHECK(Natural::from_decimal("0").is_zero());
  CHECK_THROWS_AS(Natural(3) - Natural(5), std::domain_error);
  CHECK(Natural::from_decimal("123456789012345678901234567890").to_decimal() == "123456789012345678901234567890");
}

TEST_CASE("factorial small values") {
  CHECK(factorial(0) == Natural(1));
  CHECK(factorial(1) == Natural(1));
  CHECK(factorial(10) == Natural(3628800));
  CHECK(factorial(20).to_decimal() == "2432902008176640000");
  CHECK(factorial(25).to_decimal() == "15511210043330985984000000");
}

TEST_CASE("factorial matches GMP up to 600") {
  for (unsigned long n = 0; n <= 600; n += 7) CHECK(factorial(n).value() == gmp_factorial(n));
  CHECK(range_product(5, 4) == Natural(1));
  CHECK(range_product(1, 300).value() == gmp_factorial(300));
  CHECK(range_product(101, 200).value() * gmp_factorial(100) == gmp_factorial(200));
}

TEST_CASE("falling factorial identities") {
  CHECK(falling_factorial(Natural(10), 3) == Natural(720));
  CHECK(falling_factorial(Natural(3), 5).is_zero());
  CHECK(falling_factorial(Natural(7), 0) == Natural(1));
  for (std::uint64_t n = 0; n <= 500; n += 13) {
    for (std::uint64_t k = 0; k <= n; k += 3) {
      CHECK(falling_factorial(Natural(n), k) * factorial(n - k) == factorial(n));
    }
  }
}

TEST_CASE("integer kth root examples") {
  auto r = integer_kth_root(Natural(720), 3);
  CHECK(r.root == Natural(8));
  CHECK_FALSE(r.exact);
  r = integer_kth_root(Natural(1000), 3);
  CHECK(r.root == Natural(10));
  CHECK(r.exact);
  CHECK(integer_kth_root(Natural(0), 5).root.is_zero());
  CHECK(integer_kth_root(Natural(1), 5).exact);
  CHECK(integer_kth_root(Natural(17), 1).root == Natural(17));
  CHECK_THROWS_AS(integer_kth_root(Natural(5), 0), std::invalid_argument);
}

TEST_CASE("integer kth root agrees with mpz_root on random inputs") {
  std::mt19937_64 rng(12345);
  for (int trial = 0; trial < 3000; ++trial) {
    const unsigned long k = 1 + rng() % 64;
    Integer n = rng() % 1000001;
    if (trial % 3 == 0) {
      // big operands exercise the recursive seed
      const unsigned long bits = 64 + rng() % 4000;
      mpz_mul_2exp(n.get_mpz_t(), Integer(rng() | 1).get_mpz_t(), bits);
      n += rng();
    }
    const auto r = integer_kth_root(Natural(n), k);
    const Integer expect = gmp_root(n, k);
    REQUIRE(r.root.value() == expect);
    CHECK(cmp(gmp_pow(expect, k), n) <= 0);
    CHECK(cmp(gmp_pow(expect + 1, k), n) > 0);
    CHECK(r.exact == (gmp_pow(expect, k) == n));
  }
}

TEST_CASE("integer kth root on exact powers and their neighbours") {
  for (unsigned long k = 2; k <= 40; ++k) {
    for (unsigned long base : {2UL, 3UL, 1000003UL, 999999999989UL}) {
      const Integer p = gmp_pow(Integer(base), k);
      CHECK(integer_kth_root(Natural(p), k).root.value() == Integer(base));
      CHECK(integer_kth_root(Natural(p), k).exact);
      CHECK(integer_kth_root(Natural(Integer(p - 1)), k).root.value() == Integer(base - 1));
    }
  }
}

TEST_CASE("kth_root_fixed examples") {
  const auto f = kth_root_fixed(Natural(720), 3, 64);
  CHECK(f.int_part == Natural(8));
  CHECK(f.to_double() == doctest::Approx(8.962809493).epsilon(1e-9));
  const auto s = kth_root_fixed(Natural(2), 2, 96);
  CHECK(s.int_part == Natural(1));
  CHECK(s.to_double() == doctest::Approx(1.41421356237309515));
  CHECK_THROWS_AS(kth_root_fixed(Natural(2), 0, 96), std::invalid_argument);
  CHECK_THROWS_AS(kth_root_fixed(Natural(2), 2, 0), std::invalid_argument);
}

TEST_CASE("kth_root_fixed is stable when precision doubles") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const std::uint64_t a = 2 + rng() % 400;
    const std::uint64_t k = 2 + rng() % 12;
    const std::uint32_t p = 64 + static_cast<std::uint32_t>(rng() % 64);
    const Rational lo = kth_root_fixed(factorial(a), k, p).to_rational();
    const Rational hi = kth_root_fixed(factorial(a), k, 2 * p).to_rational();
    Rational diff = hi - lo;
    Rational tol(Integer(2), Integer(1));
    mpz_mul_2exp(tol.get_den_mpz_t(), tol.get_den_mpz_t(), p);
    tol.canonicalize();
    CHECK(sgn(diff) >= 0);
    CHECK(cmp(diff, tol) < 0);
  }
}

TEST_CASE("digit sums") {
  CHECK(digit_sum(Natural(10), 2) == 2);
  CHECK(digit_sum(Natural(255), 16) == 30);
  CHECK(digit_sum(Natural(0), 7) == 0);
  CHECK_THROWS_AS(digit_sum(Natural(5), 1), std::invalid_argument);
  std::mt19937_64 rng(99);
  for (int i = 0; i < 500; ++i) {
    const std::uint64_t n = rng() % 100000000;
    const std::uint64_t q = 2 + rng() % 30;
    CHECK(digit_sum(Natural(n), q) % (q - 1) == n % (q - 1));
  }
}

TEST_CASE("Legendre valuation agrees with the multiples count") {
  CHECK(nu_p_factorial(10, 2) == 8);
  CHECK(nu_p_factorial(100, 5) == 24);
  CHECK(nu_p_factorial(0, 3) == 0);
  CHECK_THROWS_AS(nu_p_factorial(10, 1), std::invalid_argument);
  for (std::uint64_t p : {2, 3, 5, 7, 11}) {
    for (std::uint64_t n = 0; n <= 10000; ++n) REQUIRE(nu_p_factorial(n, p) == legendre_sum(n, p));
  }
}

TEST_CASE("factorial table is safe under concurrent access") {
  FactorialTable table;
  std::vector<std::thread> pool;
  std::vector<Integer> got(8);
  for (int t = 0; t < 8; ++t) {
    pool.emplace_back([&, t] { got[t] = table.get(200 + 37 * t).value(); });
  }
  for (auto& th : pool) th.join();
  for (int t = 0; t < 8; ++t) CHECK(got[t] == gmp_factorial(200 + 37 * t));
}

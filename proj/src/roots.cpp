#include <bit>
#include <cmath>
#include <stdexcept>

#include "fdl/arith.hpp"

namespace fdl::arith {

namespace {

Integer ipow(const Integer& base, std::uint64_t exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), static_cast<unsigned long>(exp));
  return r;
}

std::size_t bits_of(const Integer& v) { return mpz_sizeinbase(v.get_mpz_t(), 2); }

// Floor k-th root of n >= 2, k >= 2.
Integer floor_root(const Integer& n, std::uint64_t k) {
  const std::size_t bits = bits_of(n);
  if (bits <= k) return 1;
  const std::size_t root_bits = (bits + k - 1) / k;

  if (root_bits <= 40) {
    // Seed from a double; the exact adjustment below fixes any rounding.
    long exp2 = 0;
    const double mant = mpz_get_d_2exp(&exp2, n.get_mpz_t());
    const double approx =
        std::pow(mant, 1.0 / static_cast<double>(k)) *
        std::exp2(static_cast<double>(exp2) / static_cast<double>(k));
    Integer r = static_cast<unsigned long>(std::max(1.0, std::floor(approx)));
    while (cmp(ipow(r, k), n) > 0) --r;
    while (cmp(ipow(r + 1, k), n) <= 0) ++r;
    return r;
  }

  // Root of the top bits (half the root plus a few guard bits) gives a
  // seed whose single Newton step lands within a unit or two of the floor
  // root; (m + 1) << half strictly exceeds the true root.
  const std::size_t guard = static_cast<std::size_t>(std::bit_width(k)) + 4;
  const std::size_t half = root_bits / 2 > guard ? root_bits / 2 - guard : root_bits / 2;
  Integer top;
  mpz_fdiv_q_2exp(top.get_mpz_t(), n.get_mpz_t(), k * half);
  Integer x = floor_root(top, k) + 1;
  mpz_mul_2exp(x.get_mpz_t(), x.get_mpz_t(), half);

  // Integer Newton never undershoots the floor root.
  Integer q;
  const auto step = [&](const Integer& from) {
    q = ipow(from, k - 1);
    mpz_fdiv_q(q.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t());
    Integer y = from * (k - 1) + q;
    mpz_fdiv_q_ui(y.get_mpz_t(), y.get_mpz_t(), static_cast<unsigned long>(k));
    return y;
  };
  x = step(x);
  for (int tries = 0; tries < 3; ++tries) {
    if (cmp(ipow(x, k), n) <= 0) return x;
    --x;
  }
  // Slow path: Newton from above decreases monotonically to the floor root.
  for (;;) {
    Integer y = step(x);
    if (cmp(y, x) >= 0) break;
    x.swap(y);
  }
  return x;
}

}  // namespace

KthRoot integer_kth_root(const Natural& n, std::uint64_t k) {
  if (k == 0) throw std::invalid_argument("integer_kth_root: k must be >= 1");
  if (k == 1 || cmp(n.value(), 1) <= 0) return {n, true};
  Integer r = floor_root(n.value(), k);
  const bool exact = cmp(ipow(r, k), n.value()) == 0;
  return {Natural(std::move(r)), exact};
}

Natural FixedFrac::scaled() const { return (int_part << precision_bits) + frac_num; }

Rational FixedFrac::to_rational() const {
  Integer den = 1;
  mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), precision_bits);
  Rational r(scaled().value(), den);
  r.canonicalize();
  return r;
}

double FixedFrac::to_double() const { return to_rational().get_d(); }

FixedFrac kth_root_fixed(const Natural& n, std::uint64_t k, std::uint32_t precision_bits) {
  if (k == 0) throw std::invalid_argument("kth_root_fixed: k must be >= 1");
  if (precision_bits == 0) throw std::invalid_argument("kth_root_fixed: precision must be > 0");
  const Natural scaled = n << (k * precision_bits);
  const Natural root = integer_kth_root(scaled, k).root;
  Integer frac;
  mpz_fdiv_r_2exp(frac.get_mpz_t(), root.value().get_mpz_t(), precision_bits);
  return FixedFrac{root >> precision_bits, Natural(std::move(frac)), precision_bits};
}

}  // namespace fdl::arith

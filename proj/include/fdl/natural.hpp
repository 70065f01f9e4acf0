#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace fdl {

/// Signed arbitrary-precision integer, used for polynomial coefficients and
/// exact rational bookkeeping.
using Integer = mpz_class;
using Rational = mpq_class;

/// Arbitrary-precision nonnegative integer.
///
/// A thin value type over GMP's mpz_class that enforces nonnegativity:
/// subtraction that would go below zero throws std::domain_error.
class Natural {
 public:
  Natural() = default;
  Natural(std::uint64_t v);  // NOLINT(google-explicit-constructor)
  explicit Natural(const Integer& v);
  explicit Natural(Integer&& v);

  /// Parses a canonical decimal string (digits only, no sign, no leading
  /// zeros other than "0" itself).
  static Natural from_decimal(std::string_view text);
  std::string to_decimal() const;

  const Integer& value() const { return v_; }

  bool is_zero() const { return sgn(v_) == 0; }
  /// Number of significant bits; 0 for zero.
  std::size_t bit_length() const;
  bool fits_u64() const;
  std::uint64_t to_u64() const;

  Natural& operator+=(const Natural& o);
  Natural& operator-=(const Natural& o);
  Natural& operator*=(const Natural& o);
  Natural& operator*=(std::uint64_t o);
  Natural& operator/=(const Natural& o);
  Natural& operator%=(const Natural& o);
  Natural& operator<<=(std::size_t bits);
  Natural& operator>>=(std::size_t bits);

  friend Natural operator+(Natural a, const Natural& b) { return a += b; }
  friend Natural operator-(Natural a, const Natural& b) { return a -= b; }
  friend Natural operator*(Natural a, const Natural& b) { return a *= b; }
  friend Natural operator/(Natural a, const Natural& b) { return a /= b; }
  friend Natural operator%(Natural a, const Natural& b) { return a %= b; }
  friend Natural operator<<(Natural a, std::size_t s) { return a <<= s; }
  friend Natural operator>>(Natural a, std::size_t s) { return a >>= s; }

  friend bool operator==(const Natural& a, const Natural& b) {
    return cmp(a.v_, b.v_) == 0;
  }
  friend std::strong_ordering operator<=>(const Natural& a, const Natural& b) {
    const int c = cmp(a.v_, b.v_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  Integer v_{0};
};

Natural pow(const Natural& base, std::uint64_t exp);

}  // namespace fdl

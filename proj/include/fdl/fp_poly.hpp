#pragma once

#include <cstdint>
#include <random>
#include <utility>
#include <vector>

#include "fdl/natural.hpp"

namespace fdl::polyfact {

/// Dense polynomial over the prime field F_p (p < 2^32), coefficients in
/// ascending degree order with no trailing zeros. The zero polynomial has
/// no coefficients.
class FpPoly {
 public:
  FpPoly() = default;
  FpPoly(std::uint64_t p, std::vector<std::uint64_t> coeffs);

  static FpPoly constant(std::uint64_t p, std::uint64_t c);
  static FpPoly x(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  const std::vector<std::uint64_t>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const { return c_.size() == 1 && c_[0] == 1; }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  std::uint64_t lead() const { return c_.empty() ? 0 : c_.back(); }
  std::uint64_t eval(std::uint64_t x) const;

  FpPoly monic() const;
  FpPoly derivative() const;

  friend FpPoly operator+(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator-(const FpPoly& a, const FpPoly& b);
  friend FpPoly operator*(const FpPoly& a, const FpPoly& b);
  friend bool operator==(const FpPoly&, const FpPoly&) = default;

 private:
  void trim();
  std::uint64_t p_ = 2;
  std::vector<std::uint64_t> c_;
};

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t p);

/// Quotient and remainder; b must be nonzero.
std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b);
FpPoly operator%(const FpPoly& a, const FpPoly& b);
FpPoly operator/(const FpPoly& a, const FpPoly& b);

/// Monic gcd (zero only if both inputs are zero).
FpPoly gcd(const FpPoly& a, const FpPoly& b);

/// Bezout coefficients s, t with s*a + t*b = gcd(a, b) (monic).
struct Bezout {
  FpPoly gcd, s, t;
};
Bezout ext_gcd(const FpPoly& a, const FpPoly& b);

/// base^exp mod m.
FpPoly powmod(const FpPoly& base, const Integer& exp, const FpPoly& m);

/// Squarefree decomposition of a monic polynomial: pairs (g, e) with g
/// squarefree, monic, pairwise coprime and f = prod g^e.
std::vector<std::pair<FpPoly, unsigned>> squarefree_decomposition(const FpPoly& f);

/// Distinct-degree factorization of a squarefree monic polynomial: pairs
/// (g, d) where g is the product of all irreducible factors of degree d.
std::vector<std::pair<FpPoly, unsigned>> distinct_degree_factorization(const FpPoly& f);

/// Splits a squarefree monic product of degree-d irreducibles into its
/// factors (Cantor-Zassenhaus; odd p only). rng drives the random splits.
std::vector<FpPoly> equal_degree_factorization(const FpPoly& f, unsigned d, std::mt19937_64& rng);

/// Full factorization of a squarefree monic polynomial into monic
/// irreducibles, sorted by (degree, coefficients). Odd p only.
std::vector<FpPoly> factor_squarefree(const FpPoly& f, std::uint64_t seed = 0x5eed);

}  // namespace fdl::polyfact

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fdl/fp_poly.hpp"
#include "fdl/natural.hpp"

namespace fdl::polyfact {

/// Dense polynomial over Z, coefficients in ascending degree order. The
/// leading coefficient is nonzero; the zero polynomial has no coefficients.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(std::vector<Integer> coeffs);

  static IntPoly constant(const Integer& c);
  /// x - root
  static IntPoly linear_root(const Integer& root);

  const std::vector<Integer>& coeffs() const { return c_; }
  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const Integer& lead() const;
  Integer eval(const Integer& x) const;

  /// Nonnegative gcd of the coefficients (0 for the zero polynomial).
  Integer content() const;
  /// Divides out the content and makes the leading coefficient positive.
  IntPoly primitive_part() const;
  IntPoly derivative() const;
  FpPoly reduce(std::uint64_t p) const;

  /// "x^2 - x + 1"
  std::string to_string() const;

  friend IntPoly operator+(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator-(const IntPoly& a, const IntPoly& b);
  friend IntPoly operator*(const IntPoly& a, const IntPoly& b);
  friend bool operator==(const IntPoly&, const IntPoly&) = default;

 private:
  void trim();
  std::vector<Integer> c_;
};

/// Quotient a / b when it exists in Z[x], i.e. b divides a exactly.
std::optional<IntPoly> exact_divide(const IntPoly& a, const IntPoly& b);

/// gcd over Z with positive leading coefficient (primitive remainder
/// sequence).
IntPoly gcd(const IntPoly& a, const IntPoly& b);

/// Expands x(x-1)...(x-k+1) + shift in the monomial basis. The
/// coefficients of the product are signed Stirling numbers of the first
/// kind.
IntPoly falling_to_monomial(std::uint64_t k, const Integer& shift);

/// F_k(x) = x(x-1)...(x-k+1) + 1.
IntPoly falling_plus_one(std::uint64_t k);

/// All integer roots, ascending. Simple roots of the squarefree part are
/// found mod a small prime and Hensel-lifted past the Cauchy root bound,
/// so the search is complete without enumerating divisors.
std::vector<Integer> integer_roots(const IntPoly& poly);

/// The largest integer root, if any. Throws std::invalid_argument for the
/// zero polynomial.
std::optional<Integer> rational_root(const IntPoly& poly);

/// Degrees of the irreducible factors of poly mod p, with multiplicity,
/// ascending. Throws std::invalid_argument when p divides the leading
/// coefficient or p is not a prime below 2^32.
std::vector<unsigned> factor_degrees_mod_p(const IntPoly& poly, std::uint64_t p);

enum class IrredStatus { Irreducible, Reducible, Unknown };

struct IrredCertificate {
  enum class Kind {
    None,             // Unknown verdict
    DegreeOne,        // linear input
    IrreducibleModP,  // primes[0]: poly stays irreducible mod that prime
    PartitionSieve,   // primes: factor-degree patterns admit no proper split
    Recombination,    // primes[0]: lifted factors admit no true factor
    Factors,          // factors multiply back to the input
    RationalRoot,     // root plus factors (x - root) * cofactor
  };
  Kind kind = Kind::None;
  std::vector<std::uint64_t> primes;
  std::vector<IntPoly> factors;
  std::optional<Integer> root;

  friend bool operator==(const IrredCertificate&, const IrredCertificate&) = default;
};

struct IrredVerdict {
  IrredStatus status = IrredStatus::Unknown;
  IrredCertificate certificate;

  friend bool operator==(const IrredVerdict&, const IrredVerdict&) = default;
};

struct IrredOptions {
  unsigned prime_budget = 40;      // T
  unsigned recombine_degree_cap = 24;  // D
};

/// Irreducibility over Z for a primitive polynomial of degree >= 1.
///
/// Stages: repeated factors (gcd with the derivative), integer roots,
/// factor-degree patterns at up to T good primes (a single irreducible
/// reduction, or a partition sieve that leaves no proper factor degree),
/// then for degree <= D Zassenhaus recombination of a Hensel-lifted
/// factorization. Otherwise Unknown. Throws std::invalid_argument for
/// constant or non-primitive input.
IrredVerdict is_irreducible_over_z(const IntPoly& poly, const IrredOptions& opts = {});

/// Independent check of a verdict's certificate: witnesses multiply back,
/// a root evaluates to zero, an irreducibility prime reproduces the single
/// full-degree pattern, and a sieve prime list leaves no proper degree.
bool verify_certificate(const IntPoly& poly, const IrredVerdict& verdict);

struct ScanEntry {
  std::uint64_t k = 0;
  std::uint64_t a = 0;
  IrredVerdict verdict;
};

struct ExceptionScan {
  std::vector<ScanEntry> reducible;  // sorted by (k, a)
  std::vector<ScanEntry> unknown;    // sorted by (k, a)
  std::uint64_t cells = 0;
};

/// Irreducibility of x(x-1)...(x-k+1) - a! over 1 <= k <= k_max and
/// k + 3 <= a <= a_max.
ExceptionScan exception_scan(std::uint64_t a_max, std::uint64_t k_max,
                             const IrredOptions& opts = {}, unsigned threads = 1);

}  // namespace fdl::polyfact

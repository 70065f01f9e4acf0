#pragma once

#include <cstdint>
#include <vector>

#include "fdl/natural.hpp"

namespace fdl::modular {

/// All primes <= n in increasing order (segmented sieve of Eratosthenes).
std::vector<std::uint64_t> primes_up_to(std::uint64_t n);

/// Deterministic trial-division primality test; intended for argument
/// validation on word-sized moduli.
bool is_prime(std::uint64_t n);

/// Legendre symbol (a | p) via Euler's criterion. Throws
/// std::invalid_argument unless p is an odd prime.
int legendre_symbol(std::int64_t a, std::uint64_t p);

/// (n-1)! == -1 (mod n), by an incremental product. False for n < 2.
bool wilson_check(std::uint64_t n);

/// All x in [0, p) with x(x-1)...(x-k+1) == t (mod p), ascending.
///
/// The sweep keeps a running x! mod p and tests x! == t * (x-k)! for
/// x in [k, p), which avoids modular inverses entirely; residues x < k
/// give a zero product. Requires p prime and p < 2^32.
std::vector<std::uint64_t> falling_roots_mod_p(std::uint64_t k, std::int64_t t, std::uint64_t p);

/// True iff F_k(x) = x(x-1)...(x-k+1) + 1 has a root mod p; stops at the
/// first root.
bool has_falling_root(std::uint64_t k, std::uint64_t p);

enum class Verdict { Impossible, Possible };

/// Roots of F_k mod p. Impossible certifies that a = p - 1 admits no
/// class-k solution.
struct ScreenOutcome {
  std::uint64_t p = 0;
  std::uint64_t k = 0;
  Verdict verdict = Verdict::Possible;
  std::vector<std::uint64_t> roots;

  friend bool operator==(const ScreenOutcome&, const ScreenOutcome&) = default;
};

/// Throws std::invalid_argument when p <= k or p is not prime.
ScreenOutcome screen_class_k(std::uint64_t p, std::uint64_t k);

/// p == 5 (mod 6): the class-2 obstruction.
bool class2_residue_test(std::uint64_t p);

/// p mod 5 in {2, 3}: the class-4 obstruction. Throws std::invalid_argument
/// for p == 5.
bool class4_residue_test(std::uint64_t p);

struct DensityReport {
  std::uint64_t k = 0;
  std::uint64_t prime_bound = 0;  // N
  std::uint64_t primes_tested = 0;
  std::uint64_t no_root_count = 0;

  /// no_root_count / primes_tested, canonical.
  Rational fraction() const;

  friend bool operator==(const DensityReport&, const DensityReport&) = default;
};

/// Over primes k < p <= N, counts those with no root of F_k mod p.
/// Throws std::invalid_argument when N <= k.
DensityReport no_root_density(std::uint64_t k, std::uint64_t prime_bound, unsigned threads = 1);

/// Number of b in [1, n] with F_k(b) == 0 (mod p), against the bound
/// n k / p + 1.
struct CountBoundReport {
  std::uint64_t p = 0;
  std::uint64_t k = 0;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> roots;  // A_k
  std::uint64_t actual = 0;
  Rational bound;                    // n k / p + 1
  std::uint64_t bound_floor = 0;     // floor(n k / p) + 1, the largest integer <= bound
  std::uint64_t residue_bound = 0;   // ceil(n |A_k| / p)

  friend bool operator==(const CountBoundReport&, const CountBoundReport&) = default;
};

/// Throws std::invalid_argument when p <= k or p is not prime.
CountBoundReport count_bound_report(std::uint64_t p, std::uint64_t k, std::uint64_t n);

}  // namespace fdl::modular

#pragma once

#include <cstdint>
#include <deque>
#include <mutex>

#include "fdl/natural.hpp"

namespace fdl::arith {

/// Memoized n! table. Entries are never moved once created, so returned
/// references stay valid for the lifetime of the table. Thread-safe.
class FactorialTable {
 public:
  FactorialTable();

  const Natural& get(std::uint64_t n);
  /// Number of memoized entries (0!, 1!, ..., (size-1)!).
  std::size_t size() const;

 private:
  mutable std::mutex mu_;
  std::deque<Natural> table_;
};

/// n!, exact. Backed by a process-wide FactorialTable.
const Natural& factorial(std::uint64_t n);

/// Product lo * (lo+1) * ... * hi by binary splitting; 1 when lo > hi.
/// Not memoized; intended for large one-off products.
Natural range_product(std::uint64_t lo, std::uint64_t hi);

/// x(x-1)...(x-k+1). Zero when x < k (some factor is zero), one when k == 0.
Natural falling_factorial(const Natural& x, std::uint64_t k);

struct KthRoot {
  Natural root;  // floor(n^(1/k))
  bool exact = false;
};

/// Floor of the k-th root by integer Newton iteration. Throws
/// std::invalid_argument for k == 0.
KthRoot integer_kth_root(const Natural& n, std::uint64_t k);

/// Real number int_part + frac_num / 2^precision_bits, 0 <= frac_num < 2^P.
struct FixedFrac {
  Natural int_part;
  Natural frac_num;
  std::uint32_t precision_bits = 0;

  friend bool operator==(const FixedFrac&, const FixedFrac&) = default;

  /// int_part * 2^P + frac_num.
  Natural scaled() const;
  /// Exact value as a rational.
  Rational to_rational() const;
  /// Nearest double; presentation only.
  double to_double() const;
};

/// n^(1/k) truncated to P fractional bits: floor(n^(1/k) * 2^P) / 2^P.
/// Throws std::invalid_argument for k == 0 or P == 0.
FixedFrac kth_root_fixed(const Natural& n, std::uint64_t k, std::uint32_t precision_bits);

/// Sum of the base-q digits of n. Throws std::invalid_argument for q < 2.
std::uint64_t digit_sum(const Natural& n, std::uint64_t base);

/// nu_p(n!) by Legendre's formula (n - s_p(n)) / (p - 1). p must be prime;
/// throws std::invalid_argument for p < 2.
std::uint64_t nu_p_factorial(std::uint64_t n, std::uint64_t p);

}  // namespace fdl::arith

#include <stdexcept>
#include <vector>

#include "fdl/arith.hpp"

namespace fdl::arith {

namespace {

Integer product_tree(std::vector<Integer>& terms, std::size_t lo, std::size_t hi) {
  if (hi - lo == 1) return terms[lo];
  if (hi - lo == 2) return terms[lo] * terms[lo + 1];
  const std::size_t mid = lo + (hi - lo) / 2;
  return product_tree(terms, lo, mid) * product_tree(terms, mid, hi);
}

Integer range_product_u64(std::uint64_t lo, std::uint64_t hi) {
  if (lo > hi) return 1;
  if (hi - lo < 16) {
    Integer r = 1;
    for (std::uint64_t i = lo; i <= hi; ++i) mpz_mul_ui(r.get_mpz_t(), r.get_mpz_t(), i);
    return r;
  }
  const std::uint64_t mid = lo + (hi - lo) / 2;
  return range_product_u64(lo, mid) * range_product_u64(mid + 1, hi);
}

}  // namespace

FactorialTable::FactorialTable() { table_.emplace_back(1); }

const Natural& FactorialTable::get(std::uint64_t n) {
  std::lock_guard<std::mutex> lock(mu_);
  while (table_.size() <= n) {
    Natural next = table_.back();
    next *= static_cast<std::uint64_t>(table_.size());
    table_.push_back(std::move(next));
  }
  return table_[n];
}

std::size_t FactorialTable::size() const {
  std::lock_guard<std::mutex> lock(mu_);
  return table_.size();
}

const Natural& factorial(std::uint64_t n) {
  static FactorialTable table;
  return table.get(n);
}

Natural range_product(std::uint64_t lo, std::uint64_t hi) {
  return Natural(range_product_u64(lo, hi));
}

Natural falling_factorial(const Natural& x, std::uint64_t k) {
  if (k == 0) return Natural(1);
  if (x < Natural(k)) return Natural(0);
  if (x.fits_u64()) {
    const std::uint64_t top = x.to_u64();
    return range_product(top - k + 1, top);
  }
  std::vector<Integer> terms;
  terms.reserve(k);
  for (std::uint64_t j = 0; j < k; ++j) terms.emplace_back(x.value() - j);
  return Natural(product_tree(terms, 0, terms.size()));
}

std::uint64_t digit_sum(const Natural& n, std::uint64_t base) {
  if (base < 2) throw std::invalid_argument("digit_sum: base must be >= 2");
  if (n.fits_u64()) {
    std::uint64_t v = n.to_u64();
    std::uint64_t s = 0;
    while (v != 0) {
      s += v % base;
      v /= base;
    }
    return s;
  }
  Integer v = n.value();
  std::uint64_t s = 0;
  while (sgn(v) != 0) {
    s += mpz_fdiv_q_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(base));
  }
  return s;
}

std::uint64_t nu_p_factorial(std::uint64_t n, std::uint64_t p) {
  if (p < 2) throw std::invalid_argument("nu_p_factorial: p must be >= 2");
  return (n - digit_sum(Natural(n), p)) / (p - 1);
}

}  // namespace fdl::arith

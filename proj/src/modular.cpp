#include "fdl/modular.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "fdl/parallel.hpp"

namespace fdl::modular {

namespace {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

// Barrett reduction for moduli below 2^32; products of two residues fit
// in 64 bits.
class Barrett {
 public:
  explicit Barrett(u64 p) : p_(p), m_(std::numeric_limits<u64>::max() / p) {}

  u64 reduce(u64 x) const {
    const u64 q = static_cast<u64>((static_cast<u128>(x) * m_) >> 64);
    u64 r = x - q * p_;
    while (r >= p_) r -= p_;
    return r;
  }
  u64 mul(u64 a, u64 b) const { return reduce(a * b); }

 private:
  u64 p_;
  u64 m_;
};

constexpr u64 kMaxSweepModulus = u64{1} << 32;

u64 mulmod(u64 a, u64 b, u64 m) { return static_cast<u64>(static_cast<u128>(a) * b % m); }

u64 powmod(u64 base, u64 exp, u64 m) {
  u64 result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mulmod(result, base, m);
    base = mulmod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 normalize(std::int64_t t, u64 p) {
  const std::int64_t r = t % static_cast<std::int64_t>(p);
  return static_cast<u64>(r < 0 ? r + static_cast<std::int64_t>(p) : r);
}

void require_sweep_prime(u64 p, const char* who) {
  if (p >= kMaxSweepModulus) {
    throw std::invalid_argument(std::string(who) + ": modulus must be below 2^32");
  }
  if (!is_prime(p)) throw std::invalid_argument(std::string(who) + ": modulus must be prime");
}

// Calls on_root(x) for each root of x falling k == t (mod p) in ascending
// order; stops early when on_root returns false.
template <typename OnRoot>
void sweep_falling(u64 k, u64 t, u64 p, OnRoot&& on_root) {
  if (k == 0) {
    if (t == 1 % p) {
      for (u64 x = 0; x < p; ++x)
        if (!on_root(x)) return;
    }
    return;
  }
  // k consecutive integers with k >= p always include a multiple of p.
  const u64 zero_span = std::min(k, p);
  if (t == 0) {
    for (u64 x = 0; x < zero_span; ++x)
      if (!on_root(x)) return;
  }
  if (k >= p) return;

  const Barrett mod(p);
  // ring[j % (k+1)] holds j! mod p for the last k+1 values of j.
  std::vector<u64> ring(k + 1);
  u64 fact = 1;
  ring[0] = 1;
  for (u64 x = 1; x < p; ++x) {
    fact = mod.mul(fact, x);
    ring[x % (k + 1)] = fact;
    if (x >= k && fact == mod.mul(t, ring[(x - k) % (k + 1)])) {
      if (!on_root(x)) return;
    }
  }
}

}  // namespace

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> primes;
  if (n < 2) return primes;
  primes.push_back(2);
  if (n < 3) return primes;

  const u64 root = static_cast<u64>(std::sqrt(static_cast<double>(n))) + 1;
  std::vector<char> small(root + 1, 1);
  std::vector<u64> base;
  for (u64 i = 3; i <= root; i += 2) {
    if (!small[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += 2 * i) small[j] = 0;
  }

  // Segments cover odd numbers only; index i stands for low + 2i.
  constexpr u64 kSegment = u64{1} << 16;
  std::vector<char> seg(kSegment);
  for (u64 low = 3; low <= n; low += 2 * kSegment) {
    const u64 high = std::min(n, low + 2 * kSegment - 1);
    std::fill(seg.begin(), seg.end(), 1);
    for (u64 q : base) {
      if (q * q > high) break;
      u64 start = std::max(q * q, (low + q - 1) / q * q);
      if (start % 2 == 0) start += q;
      for (u64 j = start; j <= high; j += 2 * q) seg[(j - low) / 2] = 0;
    }
    for (u64 v = low; v <= high; v += 2) {
      if (seg[(v - low) / 2]) primes.push_back(v);
    }
  }
  return primes;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (u64 d = 3; d <= n / d; d += 2) {
    if (n % d == 0) return false;
  }
  return true;
}

int legendre_symbol(std::int64_t a, u64 p) {
  if (p < 3 || p % 2 == 0) throw std::invalid_argument("legendre_symbol: p must be an odd prime");
  const u64 r = normalize(a, p);
  if (r == 0) return 0;
  const u64 e = powmod(r, (p - 1) / 2, p);
  return e == 1 ? 1 : -1;
}

bool wilson_check(u64 n) {
  if (n < 2) return false;
  u64 prod = 1 % n;
  for (u64 i = 2; i < n; ++i) prod = mulmod(prod, i, n);
  return prod == n - 1;
}

std::vector<u64> falling_roots_mod_p(u64 k, std::int64_t t, u64 p) {
  require_sweep_prime(p, "falling_roots_mod_p");
  std::vector<u64> roots;
  sweep_falling(k, normalize(t, p), p, [&](u64 x) {
    roots.push_back(x);
    return true;
  });
  return roots;
}

bool has_falling_root(u64 k, u64 p) {
  require_sweep_prime(p, "has_falling_root");
  bool found = false;
  sweep_falling(k, p - 1, p, [&](u64) {
    found = true;
    return false;
  });
  return found;
}

ScreenOutcome screen_class_k(u64 p, u64 k) {
  if (p <= k) throw std::invalid_argument("screen_class_k: requires p > k");
  ScreenOutcome out;
  out.p = p;
  out.k = k;
  out.roots = falling_roots_mod_p(k, -1, p);
  out.verdict = out.roots.empty() ? Verdict::Impossible : Verdict::Possible;
  return out;
}

bool class2_residue_test(u64 p) { return p % 6 == 5; }

bool class4_residue_test(u64 p) {
  if (p == 5) throw std::invalid_argument("class4_residue_test: p = 5 is excluded");
  return p % 5 == 2 || p % 5 == 3;
}

Rational DensityReport::fraction() const {
  if (primes_tested == 0) return Rational(0);
  Rational f{Integer(static_cast<unsigned long>(no_root_count)), Integer(static_cast<unsigned long>(primes_tested))};
  f.canonicalize();
  return f;
}

DensityReport no_root_density(u64 k, u64 prime_bound, unsigned threads) {
  if (prime_bound <= k) throw std::invalid_argument("no_root_density: requires N > k");
  if (prime_bound >= kMaxSweepModulus) {
    throw std::invalid_argument("no_root_density: N must be below 2^32");
  }
  std::vector<u64> primes = primes_up_to(prime_bound);
  primes.erase(primes.begin(), std::upper_bound(primes.begin(), primes.end(), k));

  std::vector<char> impossible(primes.size(), 0);
  parallel_for(0, primes.size(), threads, [&](std::size_t i) {
    impossible[i] = has_falling_root(k, primes[i]) ? 0 : 1;
  });

  DensityReport r;
  r.k = k;
  r.prime_bound = prime_bound;
  r.primes_tested = primes.size();
  r.no_root_count = static_cast<u64>(std::count(impossible.begin(), impossible.end(), 1));
  return r;
}

CountBoundReport count_bound_report(u64 p, u64 k, u64 n) {
  if (p <= k) throw std::invalid_argument("count_bound_report: requires p > k");
  CountBoundReport r;
  r.p = p;
  r.k = k;
  r.n = n;
  r.roots = falling_roots_mod_p(k, -1, p);
  for (u64 root : r.roots) {
    if (root == 0) {
      r.actual += n / p;
    } else if (root <= n) {
      r.actual += (n - root) / p + 1;
    }
  }
  r.bound = Rational(Integer(n) * Integer(k), Integer(p));
  r.bound.canonicalize();
  r.bound += 1;
  r.bound_floor = static_cast<u64>((u128{n} * k) / p) + 1;
  const u128 spread = u128{n} * r.roots.size();
  r.residue_bound = static_cast<u64>((spread + p - 1) / p);
  return r;
}

}  // namespace fdl::modular

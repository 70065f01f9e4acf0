#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "fdl/arith.hpp"
#include "fdl/modular.hpp"
#include "fdl/parallel.hpp"
#include "fdl/polyfact.hpp"

namespace fdl::polyfact {

namespace {

using u64 = std::uint64_t;

IntPoly lift_to_z(const FpPoly& f) {
  std::vector<Integer> c;
  c.reserve(f.coeffs().size());
  for (u64 v : f.coeffs()) c.emplace_back(static_cast<unsigned long>(v));
  return IntPoly(std::move(c));
}

IntPoly reduce_mod(const IntPoly& f, const Integer& m) {
  std::vector<Integer> c = f.coeffs();
  for (auto& v : c) mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return IntPoly(std::move(c));
}

IntPoly symmetric_mod(const IntPoly& f, const Integer& m) {
  std::vector<Integer> c = f.coeffs();
  for (auto& v : c) {
    mpz_fdiv_r(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
    if (cmp(2 * v, m) > 0) v -= m;
  }
  return IntPoly(std::move(c));
}

IntPoly scale(const IntPoly& f, const Integer& s) { return f * IntPoly::constant(s); }

bool squarefree_mod(const FpPoly& f) {
  const FpPoly d = f.derivative();
  return !d.is_zero() && gcd(f, d).is_one();
}

// Sums reachable by sub-multisets of degrees; index = degree.
std::vector<bool> subset_sums(const std::vector<unsigned>& degrees, unsigned n) {
  std::vector<bool> reach(n + 1, false);
  reach[0] = true;
  for (unsigned d : degrees) {
    for (unsigned s = n; s >= d && s > 0; --s) {
      if (reach[s - d]) reach[s] = true;
    }
  }
  return reach;
}

bool any_proper(const std::vector<bool>& allowed, unsigned n) {
  for (unsigned d = 1; d < n; ++d)
    if (allowed[d]) return true;
  return false;
}

// Landau-Mignotte style bound on |lc(f)| * (coefficients of any factor).
Integer factor_coefficient_bound(const IntPoly& f) {
  Integer norm2 = 0;
  for (const auto& v : f.coeffs()) norm2 += v * v;
  Integer root;
  mpz_sqrt(root.get_mpz_t(), norm2.get_mpz_t());
  root += 1;
  Integer b = root;
  mpz_mul_2exp(b.get_mpz_t(), b.get_mpz_t(), static_cast<mp_bitcnt_t>(f.degree()));
  Integer lc = f.lead();
  mpz_abs(lc.get_mpz_t(), lc.get_mpz_t());
  return b * lc;
}

// Lifts F = g * h (mod p) to (mod p^e). g is monic; lc(h) == lc(F) (mod p).
std::pair<IntPoly, IntPoly> hensel_lift_pair(const IntPoly& target, const FpPoly& g,
                                             const FpPoly& h, u64 p, unsigned e) {
  const Bezout bz = ext_gcd(g, h);
  if (!bz.gcd.is_one()) throw std::logic_error("hensel_lift_pair: factors not coprime mod p");
  Integer modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), static_cast<unsigned long>(p), e);

  IntPoly G = lift_to_z(g);
  std::vector<Integer> hc = lift_to_z(h).coeffs();
  mpz_fdiv_r(hc.back().get_mpz_t(), target.lead().get_mpz_t(), modulus.get_mpz_t());
  IntPoly H(std::move(hc));

  Integer pj(static_cast<unsigned long>(p));
  for (unsigned j = 1; j < e; ++j) {
    const Integer next = pj * static_cast<unsigned long>(p);
    IntPoly err = reduce_mod(target - G * H, next);
    std::vector<Integer> ec = err.coeffs();
    for (auto& v : ec) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), pj.get_mpz_t());
    const FpPoly c = IntPoly(std::move(ec)).reduce(p);
    const FpPoly dg = (bz.t * c) % g;
    const FpPoly dh = (c - h * dg) / g;
    G = G + scale(lift_to_z(dg), pj);
    H = H + scale(lift_to_z(dh), pj);
    pj = next;
  }
  return {reduce_mod(G, modulus), reduce_mod(H, modulus)};
}

// Lifts the monic factorization f = lc * prod(factors) (mod p) to mod p^e.
std::vector<IntPoly> hensel_lift(const IntPoly& f, const std::vector<FpPoly>& factors, u64 p,
                                 unsigned e) {
  Integer modulus;
  mpz_ui_pow_ui(modulus.get_mpz_t(), static_cast<unsigned long>(p), e);
  std::vector<IntPoly> lifted;
  IntPoly current = reduce_mod(f, modulus);
  for (std::size_t i = 0; i + 1 < factors.size(); ++i) {
    FpPoly rest = FpPoly::constant(p, current.reduce(p).lead());
    for (std::size_t j = i + 1; j < factors.size(); ++j) rest = rest * factors[j];
    auto [g, h] = hensel_lift_pair(current, factors[i], rest, p, e);
    lifted.push_back(std::move(g));
    current = std::move(h);
  }
  Integer inv;
  mpz_invert(inv.get_mpz_t(), current.lead().get_mpz_t(), modulus.get_mpz_t());
  lifted.push_back(reduce_mod(scale(current, inv), modulus));
  return lifted;
}

// Zassenhaus subset recombination. Returns the factorization over Z (one
// entry when no proper factor exists).
std::vector<IntPoly> recombine(const IntPoly& f, const std::vector<IntPoly>& lifted,
                               const Integer& modulus, const std::vector<bool>& allowed) {
  std::vector<std::size_t> pool(lifted.size());
  std::iota(pool.begin(), pool.end(), 0);
  std::vector<IntPoly> found;
  IntPoly current = f;
  std::size_t s = 1;
  while (2 * s <= pool.size()) {
    bool split = false;
    std::vector<std::size_t> pick(s);
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      unsigned degree = 0;
      for (std::size_t idx : pick) degree += static_cast<unsigned>(lifted[pool[idx]].degree());
      if (degree < allowed.size() && allowed[degree]) {
        IntPoly cand = IntPoly::constant(current.lead());
        for (std::size_t idx : pick) cand = reduce_mod(cand * lifted[pool[idx]], modulus);
        cand = symmetric_mod(cand, modulus).primitive_part();
        if (cand.degree() >= 1) {
          if (auto q = exact_divide(current, cand)) {
            found.push_back(cand);
            current = std::move(*q);
            for (std::size_t i = s; i-- > 0;) pool.erase(pool.begin() + static_cast<long>(pick[i]));
            split = true;
            break;
          }
        }
      }
      // next combination of s indices out of pool.size()
      std::size_t i = s;
      while (i-- > 0 && pick[i] == pool.size() - s + i) {
      }
      if (i == static_cast<std::size_t>(-1)) break;
      ++pick[i];
      for (std::size_t j = i + 1; j < s; ++j) pick[j] = pick[j - 1] + 1;
    }
    if (!split) ++s;
  }
  found.push_back(current);
  return found;
}

struct PrimeData {
  u64 p;
  std::vector<unsigned> degrees;
};

// Generates the good primes for f: p does not divide lc(f) and f stays
// squarefree mod p.
class GoodPrimes {
 public:
  explicit GoodPrimes(const IntPoly& f) : f_(f) {}

  std::optional<u64> next() {
    while (tried_ < kMaxTried) {
      if (idx_ >= primes_.size()) {
        limit_ *= 4;
        primes_ = modular::primes_up_to(limit_);
      }
      const u64 p = primes_[idx_++];
      ++tried_;
      if (mpz_fdiv_ui(f_.lead().get_mpz_t(), static_cast<unsigned long>(p)) == 0) continue;
      if (!squarefree_mod(f_.reduce(p))) continue;
      return p;
    }
    return std::nullopt;
  }

 private:
  static constexpr unsigned kMaxTried = 2000;
  const IntPoly& f_;
  u64 limit_ = 64;
  std::vector<u64> primes_ = modular::primes_up_to(64);
  std::size_t idx_ = 0;
  unsigned tried_ = 0;
};

IrredVerdict reducible(IrredCertificate::Kind kind, std::vector<IntPoly> factors,
                       std::optional<Integer> root = std::nullopt) {
  IrredVerdict v;
  v.status = IrredStatus::Reducible;
  v.certificate.kind = kind;
  v.certificate.factors = std::move(factors);
  v.certificate.root = std::move(root);
  return v;
}

IrredVerdict irreducible(IrredCertificate::Kind kind, std::vector<u64> primes) {
  IrredVerdict v;
  v.status = IrredStatus::Irreducible;
  v.certificate.kind = kind;
  v.certificate.primes = std::move(primes);
  return v;
}

std::vector<IntPoly> recombine_with_prime(const IntPoly& f, u64 p, const std::vector<bool>& allowed) {
  const std::vector<FpPoly> factors = factor_squarefree(f.reduce(p).monic());
  if (factors.size() <= 1) return {f};
  const Integer bound = 2 * factor_coefficient_bound(f);
  unsigned e = 1;
  Integer modulus(static_cast<unsigned long>(p));
  while (cmp(modulus, bound) <= 0) {
    modulus *= static_cast<unsigned long>(p);
    ++e;
  }
  const auto lifted = hensel_lift(f, factors, p, e);
  return recombine(f, lifted, modulus, allowed);
}

}  // namespace

std::vector<unsigned> factor_degrees_mod_p(const IntPoly& poly, std::uint64_t p) {
  if (p >= (u64{1} << 32) || !modular::is_prime(p)) {
    throw std::invalid_argument("factor_degrees_mod_p: p must be a prime below 2^32");
  }
  if (poly.is_zero() || mpz_fdiv_ui(poly.lead().get_mpz_t(), static_cast<unsigned long>(p)) == 0) {
    throw std::invalid_argument("factor_degrees_mod_p: p divides the leading coefficient");
  }
  std::vector<unsigned> degrees;
  for (const auto& [part, mult] : squarefree_decomposition(poly.reduce(p).monic())) {
    for (const auto& [block, d] : distinct_degree_factorization(part)) {
      const unsigned count = static_cast<unsigned>(block.degree()) / d;
      degrees.insert(degrees.end(), static_cast<std::size_t>(count) * mult, d);
    }
  }
  std::sort(degrees.begin(), degrees.end());
  return degrees;
}

IrredVerdict is_irreducible_over_z(const IntPoly& poly, const IrredOptions& opts) {
  if (poly.degree() < 1) throw std::invalid_argument("is_irreducible_over_z: degree must be >= 1");
  if (cmp(poly.content(), 1) != 0) {
    throw std::invalid_argument("is_irreducible_over_z: polynomial must be primitive");
  }
  const unsigned n = static_cast<unsigned>(poly.degree());
  if (n == 1) return irreducible(IrredCertificate::Kind::DegreeOne, {});

  // Repeated factors.
  const IntPoly common = gcd(poly, poly.derivative());
  if (common.degree() >= 1) {
    IntPoly rest = *exact_divide(poly, common);
    return reducible(IrredCertificate::Kind::Factors, {common, rest});
  }

  if (auto root = rational_root(poly)) {
    IntPoly rest = *exact_divide(poly, IntPoly::linear_root(*root));
    return reducible(IrredCertificate::Kind::RationalRoot, {IntPoly::linear_root(*root), rest}, root);
  }

  std::vector<bool> allowed(n + 1, true);
  std::vector<u64> used;
  std::optional<PrimeData> best;  // odd good prime with the fewest factors
  GoodPrimes primes(poly);
  for (unsigned i = 0; i < opts.prime_budget; ++i) {
    const auto p = primes.next();
    if (!p) break;
    auto degrees = factor_degrees_mod_p(poly, *p);
    used.push_back(*p);
    if (degrees.size() == 1) return irreducible(IrredCertificate::Kind::IrreducibleModP, {*p});
    const auto reach = subset_sums(degrees, n);
    for (unsigned d = 0; d <= n; ++d) allowed[d] = allowed[d] && reach[d];
    if (!any_proper(allowed, n)) return irreducible(IrredCertificate::Kind::PartitionSieve, used);
    if (*p != 2 && (!best || degrees.size() < best->degrees.size())) {
      best = PrimeData{*p, std::move(degrees)};
    }
  }

  if (best && n <= opts.recombine_degree_cap) {
    auto factors = recombine_with_prime(poly, best->p, allowed);
    if (factors.size() == 1) return irreducible(IrredCertificate::Kind::Recombination, {best->p});
    return reducible(IrredCertificate::Kind::Factors, std::move(factors));
  }
  return IrredVerdict{};
}

bool verify_certificate(const IntPoly& poly, const IrredVerdict& verdict) {
  using Kind = IrredCertificate::Kind;
  const auto& cert = verdict.certificate;
  const unsigned n = static_cast<unsigned>(std::max(poly.degree(), 0));
  switch (cert.kind) {
    case Kind::None:
      return false;
    case Kind::DegreeOne:
      return verdict.status == IrredStatus::Irreducible && n == 1;
    case Kind::IrreducibleModP:
      return verdict.status == IrredStatus::Irreducible && cert.primes.size() == 1 &&
             factor_degrees_mod_p(poly, cert.primes[0]) == std::vector<unsigned>{n};
    case Kind::PartitionSieve: {
      if (verdict.status != IrredStatus::Irreducible || cert.primes.empty()) return false;
      std::vector<bool> allowed(n + 1, true);
      for (u64 p : cert.primes) {
        const auto reach = subset_sums(factor_degrees_mod_p(poly, p), n);
        for (unsigned d = 0; d <= n; ++d) allowed[d] = allowed[d] && reach[d];
      }
      return !any_proper(allowed, n);
    }
    case Kind::Recombination:
      return verdict.status == IrredStatus::Irreducible && cert.primes.size() == 1 &&
             recombine_with_prime(poly, cert.primes[0], std::vector<bool>(n + 1, true)).size() == 1;
    case Kind::RationalRoot:
      if (!cert.root || sgn(poly.eval(*cert.root)) != 0) return false;
      [[fallthrough]];
    case Kind::Factors: {
      if (verdict.status != IrredStatus::Reducible || cert.factors.size() < 2) return false;
      IntPoly product = IntPoly::constant(Integer(1));
      for (const auto& f : cert.factors) {
        if (f.degree() < 1) return false;
        product = product * f;
      }
      return product == poly;
    }
  }
  return false;
}

ExceptionScan exception_scan(std::uint64_t a_max, std::uint64_t k_max, const IrredOptions& opts,
                             unsigned threads) {
  std::vector<std::pair<u64, u64>> cells;
  for (u64 k = 1; k <= k_max; ++k) {
    for (u64 a = k + 3; a <= a_max; ++a) cells.emplace_back(k, a);
  }
  for (u64 a = 0; a <= a_max; ++a) (void)arith::factorial(a);

  std::vector<IrredVerdict> verdicts(cells.size());
  parallel_for(0, cells.size(), threads, [&](std::size_t i) {
    const auto [k, a] = cells[i];
    const IntPoly poly = falling_to_monomial(k, Integer(-arith::factorial(a).value()));
    verdicts[i] = is_irreducible_over_z(poly, opts);
  });

  ExceptionScan scan;
  scan.cells = cells.size();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    ScanEntry entry{cells[i].first, cells[i].second, std::move(verdicts[i])};
    if (entry.verdict.status == IrredStatus::Reducible) {
      scan.reducible.push_back(std::move(entry));
    } else if (entry.verdict.status == IrredStatus::Unknown) {
      scan.unknown.push_back(std::move(entry));
    }
  }
  return scan;
}

}  // namespace fdl::polyfact

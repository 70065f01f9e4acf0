#include "fdl/fp_poly.hpp"

#include <algorithm>
#include <stdexcept>

namespace fdl::polyfact {

namespace {

using u64 = std::uint64_t;

u64 mulm(u64 a, u64 b, u64 p) { return a * b % p; }

u64 powm(u64 b, u64 e, u64 p) {
  u64 r = 1 % p;
  b %= p;
  while (e != 0) {
    if (e & 1) r = mulm(r, b, p);
    b = mulm(b, b, p);
    e >>= 1;
  }
  return r;
}

void check_same_field(const FpPoly& a, const FpPoly& b) {
  if (a.modulus() != b.modulus()) throw std::invalid_argument("FpPoly: mismatched moduli");
}

// f(x) = g(x^p) -> g(x); valid over F_p where a^(1/p) = a.
FpPoly pth_root(const FpPoly& f) {
  const u64 p = f.modulus();
  std::vector<u64> out;
  for (std::size_t i = 0; i < f.coeffs().size(); i += p) out.push_back(f.coeffs()[i]);
  return FpPoly(p, std::move(out));
}

}  // namespace

u64 inv_mod(u64 a, u64 p) {
  if (a % p == 0) throw std::domain_error("inv_mod: zero has no inverse");
  return powm(a, p - 2, p);
}

FpPoly::FpPoly(u64 p, std::vector<u64> coeffs) : p_(p), c_(std::move(coeffs)) {
  if (p < 2 || p >= (u64{1} << 32)) throw std::invalid_argument("FpPoly: modulus out of range");
  for (auto& v : c_) v %= p_;
  trim();
}

FpPoly FpPoly::constant(u64 p, u64 c) { return FpPoly(p, {c}); }
FpPoly FpPoly::x(u64 p) { return FpPoly(p, {0, 1}); }

void FpPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

u64 FpPoly::eval(u64 x) const {
  u64 acc = 0;
  x %= p_;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = (mulm(acc, x, p_) + *it) % p_;
  return acc;
}

FpPoly FpPoly::monic() const {
  if (c_.empty()) return *this;
  const u64 inv = inv_mod(c_.back(), p_);
  std::vector<u64> out(c_);
  for (auto& v : out) v = mulm(v, inv, p_);
  return FpPoly(p_, std::move(out));
}

FpPoly FpPoly::derivative() const {
  if (c_.size() <= 1) return FpPoly(p_, {});
  std::vector<u64> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = mulm(c_[i], i % p_, p_);
  return FpPoly(p_, std::move(out));
}

FpPoly operator+(const FpPoly& a, const FpPoly& b) {
  check_same_field(a, b);
  const u64 p = a.modulus();
  std::vector<u64> out(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) out[i] = a.coeffs()[i];
  for (std::size_t i = 0; i < b.coeffs().size(); ++i) out[i] = (out[i] + b.coeffs()[i]) % p;
  return FpPoly(p, std::move(out));
}

FpPoly operator-(const FpPoly& a, const FpPoly& b) {
  check_same_field(a, b);
  const u64 p = a.modulus();
  std::vector<u64> out(std::max(a.coeffs().size(), b.coeffs().size()), 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) out[i] = a.coeffs()[i];
  for (std::size_t i = 0; i < b.coeffs().size(); ++i) out[i] = (out[i] + p - b.coeffs()[i]) % p;
  return FpPoly(p, std::move(out));
}

FpPoly operator*(const FpPoly& a, const FpPoly& b) {
  check_same_field(a, b);
  const u64 p = a.modulus();
  if (a.is_zero() || b.is_zero()) return FpPoly(p, {});
  std::vector<u64> out(a.coeffs().size() + b.coeffs().size() - 1, 0);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) {
    const u64 ai = a.coeffs()[i];
    if (ai == 0) continue;
    for (std::size_t j = 0; j < b.coeffs().size(); ++j) {
      out[i + j] = (out[i + j] + mulm(ai, b.coeffs()[j], p)) % p;
    }
  }
  return FpPoly(p, std::move(out));
}

std::pair<FpPoly, FpPoly> divmod(const FpPoly& a, const FpPoly& b) {
  check_same_field(a, b);
  if (b.is_zero()) throw std::domain_error("FpPoly: division by zero polynomial");
  const u64 p = a.modulus();
  if (a.degree() < b.degree()) return {FpPoly(p, {}), a};
  std::vector<u64> rem(a.coeffs());
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const u64 inv_lead = inv_mod(bc.back(), p);
  std::vector<u64> quo(rem.size() - db, 0);
  for (std::size_t i = rem.size(); i-- > db;) {
    const u64 q = mulm(rem[i], inv_lead, p);
    quo[i - db] = q;
    if (q == 0) continue;
    for (std::size_t j = 0; j <= db; ++j) {
      rem[i - db + j] = (rem[i - db + j] + p - mulm(q, bc[j], p)) % p;
    }
  }
  rem.resize(db);
  return {FpPoly(p, std::move(quo)), FpPoly(p, std::move(rem))};
}

FpPoly operator%(const FpPoly& a, const FpPoly& b) { return divmod(a, b).second; }
FpPoly operator/(const FpPoly& a, const FpPoly& b) { return divmod(a, b).first; }

FpPoly gcd(const FpPoly& a, const FpPoly& b) {
  FpPoly x = a, y = b;
  while (!y.is_zero()) {
    FpPoly r = x % y;
    x = std::move(y);
    y = std::move(r);
  }
  return x.monic();
}

Bezout ext_gcd(const FpPoly& a, const FpPoly& b) {
  const u64 p = a.modulus();
  FpPoly r0 = a, r1 = b;
  FpPoly s0 = FpPoly::constant(p, 1), s1(p, {});
  FpPoly t0(p, {}), t1 = FpPoly::constant(p, 1);
  while (!r1.is_zero()) {
    auto [q, r] = divmod(r0, r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    FpPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    FpPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  const FpPoly scale = FpPoly::constant(p, inv_mod(r0.lead(), p));
  return {r0 * scale, s0 * scale, t0 * scale};
}

FpPoly powmod(const FpPoly& base, const Integer& exp, const FpPoly& m) {
  const u64 p = base.modulus();
  FpPoly result = FpPoly::constant(p, 1) % m;
  FpPoly b = base % m;
  const std::size_t bits = sgn(exp) == 0 ? 0 : mpz_sizeinbase(exp.get_mpz_t(), 2);
  for (std::size_t i = bits; i-- > 0;) {
    result = (result * result) % m;
    if (mpz_tstbit(exp.get_mpz_t(), i)) result = (result * b) % m;
  }
  return result;
}

std::vector<std::pair<FpPoly, unsigned>> squarefree_decomposition(const FpPoly& f_in) {
  const u64 p = f_in.modulus();
  std::vector<std::pair<FpPoly, unsigned>> out;
  FpPoly f = f_in.monic();
  if (f.degree() <= 0) return out;

  const FpPoly d = f.derivative();
  if (d.is_zero()) {
    for (auto& [g, e] : squarefree_decomposition(pth_root(f))) out.emplace_back(g, e * p);
    return out;
  }
  FpPoly c = gcd(f, d);
  FpPoly w = f / c;
  unsigned i = 1;
  while (!w.is_one()) {
    FpPoly y = gcd(w, c);
    FpPoly fac = w / y;
    if (fac.degree() > 0) out.emplace_back(fac, i);
    w = std::move(y);
    c = c / w;
    ++i;
  }
  if (c.degree() > 0) {
    for (auto& [g, e] : squarefree_decomposition(pth_root(c.monic()))) {
      out.emplace_back(g, e * p);
    }
  }
  return out;
}

std::vector<std::pair<FpPoly, unsigned>> distinct_degree_factorization(const FpPoly& f_in) {
  const u64 p = f_in.modulus();
  std::vector<std::pair<FpPoly, unsigned>> out;
  FpPoly f = f_in.monic();
  const FpPoly x = FpPoly::x(p);
  FpPoly h = x % f;
  const Integer pz(static_cast<unsigned long>(p));
  unsigned d = 1;
  while (f.degree() >= 2 * static_cast<int>(d)) {
    h = powmod(h, pz, f);
    FpPoly g = gcd(h - x, f);
    if (!g.is_one()) {
      out.emplace_back(g, d);
      f = f / g;
      h = h % f;
    }
    ++d;
  }
  if (f.degree() > 0) out.emplace_back(f, static_cast<unsigned>(f.degree()));
  return out;
}

std::vector<FpPoly> equal_degree_factorization(const FpPoly& f, unsigned d, std::mt19937_64& rng) {
  const u64 p = f.modulus();
  if (p == 2) throw std::invalid_argument("equal_degree_factorization: odd p only");
  const int n = f.degree();
  if (n <= static_cast<int>(d)) return {f.monic()};

  Integer e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(p), d);
  e = (e - 1) / 2;
  std::uniform_int_distribution<u64> coef(0, p - 1);
  for (;;) {
    std::vector<u64> a(static_cast<std::size_t>(n));
    for (auto& v : a) v = coef(rng);
    FpPoly ap(p, std::move(a));
    if (ap.degree() <= 0) continue;
    FpPoly b = powmod(ap, e, f) - FpPoly::constant(p, 1);
    FpPoly g = gcd(b, f);
    if (g.degree() > 0 && g.degree() < n) {
      auto left = equal_degree_factorization(g, d, rng);
      auto right = equal_degree_factorization(f / g, d, rng);
      left.insert(left.end(), right.begin(), right.end());
      return left;
    }
  }
}

std::vector<FpPoly> factor_squarefree(const FpPoly& f, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<FpPoly> out;
  for (auto& [g, d] : distinct_degree_factorization(f)) {
    auto parts = equal_degree_factorization(g, d, rng);
    out.insert(out.end(), parts.begin(), parts.end());
  }
  std::sort(out.begin(), out.end(), [](const FpPoly& a, const FpPoly& b) {
    if (a.degree() != b.degree()) return a.degree() < b.degree();
    return std::lexicographical_compare(a.coeffs().rbegin(), a.coeffs().rend(),
                                        b.coeffs().rbegin(), b.coeffs().rend());
  });
  return out;
}

}  // namespace fdl::polyfact

#include <algorithm>
#include <stdexcept>

#include "fdl/polyfact.hpp"

namespace fdl::polyfact {

namespace {

Integer abs_int(const Integer& v) { return sgn(v) < 0 ? Integer(-v) : v; }

// Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b.
IntPoly pseudo_remainder(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> r = a.coeffs();
  const auto& bc = b.coeffs();
  const int db = b.degree();
  const Integer& lb = bc.back();
  int dr = a.degree();
  while (dr >= db && !r.empty()) {
    const Integer lr = r[static_cast<std::size_t>(dr)];
    for (auto& v : r) v *= lb;
    const std::size_t shift = static_cast<std::size_t>(dr - db);
    for (std::size_t j = 0; j < bc.size(); ++j) r[shift + j] -= lr * bc[j];
    while (!r.empty() && sgn(r.back()) == 0) r.pop_back();
    dr = static_cast<int>(r.size()) - 1;
  }
  return IntPoly(std::move(r));
}

std::uint64_t next_odd_prime(std::uint64_t p) {
  for (std::uint64_t q = p + 1;; ++q) {
    if (q % 2 == 0) continue;
    bool prime = true;
    for (std::uint64_t d = 3; d * d <= q; d += 2) {
      if (q % d == 0) {
        prime = false;
        break;
      }
    }
    if (prime) return q;
  }
}

}  // namespace

IntPoly::IntPoly(std::vector<Integer> coeffs) : c_(std::move(coeffs)) { trim(); }

IntPoly IntPoly::constant(const Integer& c) { return IntPoly({c}); }

IntPoly IntPoly::linear_root(const Integer& root) { return IntPoly({Integer(-root), Integer(1)}); }

void IntPoly::trim() {
  while (!c_.empty() && sgn(c_.back()) == 0) c_.pop_back();
}

const Integer& IntPoly::lead() const {
  if (c_.empty()) throw std::domain_error("IntPoly: zero polynomial has no leading coefficient");
  return c_.back();
}

Integer IntPoly::eval(const Integer& x) const {
  Integer acc = 0;
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
  return acc;
}

Integer IntPoly::content() const {
  Integer g = 0;
  for (const auto& v : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v.get_mpz_t());
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (c_.empty()) return *this;
  Integer g = content();
  if (sgn(c_.back()) < 0) g = -g;
  std::vector<Integer> out(c_);
  for (auto& v : out) mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), g.get_mpz_t());
  return IntPoly(std::move(out));
}

IntPoly IntPoly::derivative() const {
  if (c_.size() <= 1) return IntPoly();
  std::vector<Integer> out(c_.size() - 1);
  for (std::size_t i = 1; i < c_.size(); ++i) out[i - 1] = c_[i] * static_cast<unsigned long>(i);
  return IntPoly(std::move(out));
}

FpPoly IntPoly::reduce(std::uint64_t p) const {
  std::vector<std::uint64_t> out(c_.size());
  for (std::size_t i = 0; i < c_.size(); ++i) {
    out[i] = mpz_fdiv_ui(c_[i].get_mpz_t(), static_cast<unsigned long>(p));
  }
  return FpPoly(p, std::move(out));
}

std::string IntPoly::to_string() const {
  if (c_.empty()) return "0";
  std::string s;
  for (std::size_t i = c_.size(); i-- > 0;) {
    const Integer& v = c_[i];
    if (sgn(v) == 0) continue;
    const bool neg = sgn(v) < 0;
    const Integer mag = abs_int(v);
    if (s.empty()) {
      if (neg) s += "-";
    } else {
      s += neg ? " - " : " + ";
    }
    const bool unit = cmp(mag, 1) == 0;
    if (!unit || i == 0) s += mag.get_str();
    if (i >= 1) s += "x";
    if (i >= 2) s += "^" + std::to_string(i);
  }
  return s;
}

IntPoly operator+(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> out(std::max(a.c_.size(), b.c_.size()), Integer(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] += b.c_[i];
  return IntPoly(std::move(out));
}

IntPoly operator-(const IntPoly& a, const IntPoly& b) {
  std::vector<Integer> out(std::max(a.c_.size(), b.c_.size()), Integer(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
  for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
  return IntPoly(std::move(out));
}

IntPoly operator*(const IntPoly& a, const IntPoly& b) {
  if (a.c_.empty() || b.c_.empty()) return IntPoly();
  std::vector<Integer> out(a.c_.size() + b.c_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.c_.size(); ++i) {
    for (std::size_t j = 0; j < b.c_.size(); ++j) {
      mpz_addmul(out[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
    }
  }
  return IntPoly(std::move(out));
}

std::optional<IntPoly> exact_divide(const IntPoly& a, const IntPoly& b) {
  if (b.is_zero()) throw std::domain_error("exact_divide: division by zero polynomial");
  if (a.is_zero()) return IntPoly();
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<Integer> rem = a.coeffs();
  const auto& bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  std::vector<Integer> quo(rem.size() - db);
  Integer q;
  for (std::size_t i = rem.size(); i-- > db;) {
    if (sgn(rem[i]) == 0) continue;
    if (!mpz_divisible_p(rem[i].get_mpz_t(), bc.back().get_mpz_t())) return std::nullopt;
    mpz_divexact(q.get_mpz_t(), rem[i].get_mpz_t(), bc.back().get_mpz_t());
    quo[i - db] = q;
    for (std::size_t j = 0; j <= db; ++j) {
      mpz_submul(rem[i - db + j].get_mpz_t(), q.get_mpz_t(), bc[j].get_mpz_t());
    }
  }
  for (std::size_t i = 0; i < db; ++i) {
    if (sgn(rem[i]) != 0) return std::nullopt;
  }
  return IntPoly(std::move(quo));
}

IntPoly gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.primitive_part() * IntPoly::constant(b.content());
  if (b.is_zero()) return a.primitive_part() * IntPoly::constant(a.content());
  Integer cont;
  const Integer ca = a.content(), cb = b.content();
  mpz_gcd(cont.get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
  IntPoly x = a.primitive_part(), y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    IntPoly r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.is_zero() ? r : r.primitive_part();
  }
  return x.primitive_part() * IntPoly::constant(cont);
}

IntPoly falling_to_monomial(std::uint64_t k, const Integer& shift) {
  std::vector<Integer> c{Integer(1)};
  for (std::uint64_t j = 0; j < k; ++j) {
    // multiply by (x - j)
    std::vector<Integer> next(c.size() + 1, Integer(0));
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= c[i] * static_cast<unsigned long>(j);
    }
    c = std::move(next);
  }
  c[0] += shift;
  return IntPoly(std::move(c));
}

IntPoly falling_plus_one(std::uint64_t k) { return falling_to_monomial(k, Integer(1)); }

std::vector<Integer> integer_roots(const IntPoly& poly) {
  if (poly.is_zero()) throw std::invalid_argument("integer_roots: zero polynomial");
  std::vector<Integer> roots;
  if (poly.degree() == 0) return roots;

  // Strip the factor x^m.
  std::vector<Integer> c = poly.coeffs();
  if (sgn(c.front()) == 0) {
    roots.emplace_back(0);
    while (sgn(c.front()) == 0) c.erase(c.begin());
  }
  IntPoly g = IntPoly(std::move(c)).primitive_part();
  if (g.degree() >= 1) {
    const IntPoly common = gcd(g, g.derivative());
    if (common.degree() >= 1) g = *exact_divide(g, common);
  }

  if (g.degree() == 1) {
    const Integer& a1 = g.coeffs()[1];
    const Integer& a0 = g.coeffs()[0];
    if (mpz_divisible_p(a0.get_mpz_t(), a1.get_mpz_t())) roots.emplace_back(Integer(-a0 / a1));
  } else if (g.degree() >= 2) {
    // Cauchy bound on |root|, then a modulus above twice it.
    Integer bound = 0;
    for (const auto& v : g.coeffs()) {
      const Integer m = abs_int(v);
      if (cmp(m, bound) > 0) bound = m;
    }
    bound += 1;

    std::uint64_t p = 2;
    FpPoly gp, dp;
    for (;;) {
      p = next_odd_prime(p);
      if (mpz_fdiv_ui(g.lead().get_mpz_t(), static_cast<unsigned long>(p)) == 0) continue;
      gp = g.reduce(p);
      dp = gp.derivative();
      if (!dp.is_zero() && gcd(gp, dp).is_one()) break;
    }

    const IntPoly dg = g.derivative();
    for (std::uint64_t r = 0; r < p; ++r) {
      if (gp.eval(r) != 0) continue;
      Integer root(static_cast<unsigned long>(r));
      Integer mod(static_cast<unsigned long>(p));
      while (cmp(mod, 2 * bound) <= 0) {
        mod *= mod;
        Integer inv;
        Integer slope = dg.eval(root);
        mpz_fdiv_r(slope.get_mpz_t(), slope.get_mpz_t(), mod.get_mpz_t());
        mpz_invert(inv.get_mpz_t(), slope.get_mpz_t(), mod.get_mpz_t());
        root -= g.eval(root) * inv;
        mpz_fdiv_r(root.get_mpz_t(), root.get_mpz_t(), mod.get_mpz_t());
      }
      if (cmp(2 * root, mod) > 0) root -= mod;
      if (sgn(g.eval(root)) == 0) roots.push_back(root);
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::optional<Integer> rational_root(const IntPoly& poly) {
  auto roots = integer_roots(poly);
  if (roots.empty()) return std::nullopt;
  return roots.back();
}

}  // namespace fdl::polyfact

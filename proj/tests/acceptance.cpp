// Acceptance run: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <string>
#include <tuple>

#include "fdl/arith.hpp"
#include "fdl/equidist.hpp"
#include "fdl/io.hpp"
#include "fdl/lemma_bounds.hpp"
#include "fdl/modular.hpp"
#include "fdl/polyfact.hpp"
#include "fdl/search.hpp"

using namespace fdl;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int n, bool ok, const std::string& detail) {
  std::printf("%s criterion %d: %s\n", ok ? "PASS" : "FAIL", n, detail.c_str());
  std::fflush(stdout);
  if (!ok) ++failures;
}

void run(int n, const std::function<std::pair<bool, std::string>()>& body) {
  try {
    const auto [ok, detail] = body();
    report(n, ok, detail);
  } catch (const std::exception& e) {
    report(n, false, std::string("exception: ") + e.what());
  }
}

std::string fmt(const char* f, double v) {
  char buf[128];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

// O(n^2) star discrepancy: for every candidate t in {0, x_i}, count directly.
Rational oracle_discrepancy(const std::vector<Rational>& xs) {
  const auto n = static_cast<long>(xs.size());
  Rational best = 0;
  for (const auto& t : xs) {
    long le = 0, lt = 0;
    for (const auto& y : xs) {
      le += cmp(y, t) <= 0;
      lt += cmp(y, t) < 0;
    }
    Rational fl(le, n), fs(lt, n);
    fl.canonicalize();
    fs.canonicalize();
    const Rational a = abs(fl - t);
    const Rational b = abs(t - fs);
    if (a > best) best = a;
    if (b > best) best = b;
  }
  return best;
}

std::vector<search::Solution> found;

}  // namespace

int main() {
  run(1, [] {
    const auto t0 = Clock::now();
    found = search::brute_force_search(2000, 2, 1);
    const double dt = seconds_since(t0);
    std::set<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> got, want{
        {3, 5, 6}, {6, 7, 10}, {4, 23, 24}, {5, 119, 120}, {6, 719, 720}};
    for (const auto& s : found) got.emplace(s.a, s.b, s.c);
    const bool ok = got == want && found.size() == want.size() && dt < 60.0;
    return std::pair{ok, "search c<=2000 found " + std::to_string(found.size()) + " solutions in " +
                             fmt("%.2f s (single thread)", dt)};
  });

  run(2, [] {
    std::map<std::pair<std::uint64_t, std::uint64_t>, std::uint64_t> brute;
    for (const auto& h : search::brute_force_root_hits(2000, 30, 2)) {
      if (h.k <= 59) brute[{h.a, h.k}] = h.c.to_u64();
    }
    std::size_t mismatches = 0, cells = 0;
    for (std::uint64_t a = 2; a <= 30; ++a) {
      for (std::uint64_t k = 2; k <= 59; ++k) {
        ++cells;
        const auto hit = search::interval_search(a, k);
        std::optional<std::uint64_t> c;
        if (hit && hit->c <= Natural(2000)) c = hit->c.to_u64();
        auto it = brute.find({a, k});
        const std::optional<std::uint64_t> b = it == brute.end() ? std::nullopt : std::optional(it->second);
        mismatches += c != b;
      }
    }
    return std::pair{mismatches == 0, std::to_string(cells) + " (a,k) cells, " + std::to_string(brute.size()) +
                                          " brute-force hits, " + std::to_string(mismatches) + " mismatches"};
  });

  run(3, [] {
    std::size_t n2 = 0, n4 = 0, bad = 0;
    for (std::uint64_t p : modular::primes_up_to(10000)) {
      if (p % 6 == 5) {
        ++n2;
        bad += modular::screen_class_k(p, 2).verdict != modular::Verdict::Impossible;
      }
      if (p > 5 && (p % 5 == 2 || p % 5 == 3)) {
        ++n4;
        bad += modular::screen_class_k(p, 4).verdict != modular::Verdict::Impossible;
      }
    }
    return std::pair{bad == 0, std::to_string(n2) + " primes p=5 mod 6 (k=2), " + std::to_string(n4) +
                                   " primes p=2,3 mod 5 (k=4), " + std::to_string(bad) + " not Impossible"};
  });

  run(4, [] {
    const auto t0 = Clock::now();
    bool ok = true;
    std::string detail;
    for (std::uint64_t k : {2, 3, 5, 6}) {
      const auto d = modular::no_root_density(k, 100000);
      const double f = d.fraction().get_d();
      ok = ok && f >= 1.0 / static_cast<double>(k) - 0.05;
      if (k == 2) ok = ok && std::abs(f - 0.5) <= 0.02;
      detail += "k=" + std::to_string(k) + fmt(" %.4f; ", f);
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 120.0;
    return std::pair{ok, detail + fmt("%.1f s", dt)};
  });

  run(5, [] {
    bool ok = true;
    std::size_t unknown = 0;
    for (std::uint64_t k = 2; k <= 20; ++k) {
      const auto f = polyfact::falling_plus_one(k);
      const auto v = polyfact::is_irreducible_over_z(f);
      unknown += v.status == polyfact::IrredStatus::Unknown;
      ok = ok && polyfact::verify_certificate(f, v);
      if (k == 4) {
        const polyfact::IntPoly w({Integer(1), Integer(-3), Integer(1)});
        ok = ok && v.status == polyfact::IrredStatus::Reducible && v.certificate.factors.size() == 2 &&
             v.certificate.factors[0] == w && v.certificate.factors[1] == w;
      } else {
        ok = ok && v.status == polyfact::IrredStatus::Irreducible;
      }
    }
    ok = ok && unknown == 0;
    return std::pair{ok, "F_k for k in [2,20]: reducible only at k=4 as (x^2 - 3x + 1)^2, " +
                             std::to_string(unknown) + " unknown"};
  });

  run(6, [] {
    const auto scan = polyfact::exception_scan(30, 20);
    std::set<std::pair<std::uint64_t, std::uint64_t>> got;
    bool verified = true;
    for (const auto& e : scan.reducible) {
      got.emplace(e.k, e.a);
      const Integer shift = -arith::factorial(e.a).value();
      verified = verified && polyfact::verify_certificate(polyfact::falling_to_monomial(e.k, shift), e.verdict);
    }
    const bool ok = got == std::set<std::pair<std::uint64_t, std::uint64_t>>{{3, 6}, {4, 7}, {20, 23}} &&
                    verified && scan.unknown.empty();
    std::string list;
    for (const auto& [k, a] : got) list += "(" + std::to_string(k) + "," + std::to_string(a) + ")";
    return std::pair{ok, std::to_string(scan.cells) + " cells, reducible " + list + ", " +
                             std::to_string(scan.unknown.size()) + " unknown, witnesses " +
                             (verified ? "verified" : "NOT verified")};
  });

  run(7, [] {
    const auto t0 = Clock::now();
    const auto r = arith::verify_lemma_bounds(arith::LemmaGrid::defaults(128));
    bool margins = true;
    for (const auto& p : r.points) {
      margins = margins && p.lower_margin >= -std::ldexp(1.0, -100);
      if (p.kind == arith::LemmaKind::FallingRoot) margins = margins && p.upper_margin >= -std::ldexp(1.0, -100);
    }
    const bool ok = r.pass && margins && r.precision_bits == 128;
    return std::pair{ok, std::to_string(r.points.size()) + " grid points at 128 bits" +
                             fmt(", min margin %.3g", r.min_margin) + fmt(", %.2f s", seconds_since(t0))};
  });

  run(8, [] {
    std::mt19937_64 rng(8);
    std::size_t agree = 0;
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t n = 1 + rng() % 200;
      const long den = 1 + static_cast<long>(rng() % 997);
      std::vector<Rational> xs;
      for (std::size_t i = 0; i < n; ++i) xs.emplace_back(static_cast<long>(rng() % static_cast<unsigned long>(den)), den);
      for (auto& x : xs) x.canonicalize();
      agree += equidist::star_discrepancy(xs) == oracle_discrepancy(xs);
    }
    std::size_t equi = 0;
    for (long n = 1; n <= 200; ++n) {
      std::vector<Rational> xs;
      for (long i = 0; i < n; ++i) xs.emplace_back(2 * i + 1, 2 * n);
      for (auto& x : xs) x.canonicalize();
      Rational expect(1, 2 * n);
      expect.canonicalize();
      equi += equidist::star_discrepancy(xs) == expect;
    }
    return std::pair{agree == 50 && equi == 200, std::to_string(agree) + "/50 random sets match the O(n^2) oracle, " +
                                                     std::to_string(equi) + "/200 equispaced sets give 1/(2n)"};
  });

  run(9, [] {
    bool ok = true;
    std::string detail;
    const equidist::KPolicy policy;
    const auto full = equidist::Interval::closed(0, 1);
    const auto half = equidist::Interval::closed(0, Rational(1, 2));
    for (std::uint64_t A : {1000, 10000}) {
      const auto t0 = Clock::now();
      const auto s1 = equidist::generate_samples(A, 96, policy, 1);
      const double dt = seconds_since(t0);
      const auto s2 = equidist::generate_samples(A, 96, policy, 1);
      const auto s4 = equidist::generate_samples(A, 96, policy, 4);
      const bool same = s1 == s2 && s1 == s4;
      const bool total = equidist::interval_count(s1, full) == s1.size();
      const std::vector<double> eps{0.1, 0.25};
      const std::vector<equidist::Interval> ivs{half};
      const auto rows = equidist::conjecture_rows(s1, eps, ivs);
      const std::string r1 = io::to_json(rows[0]).dump();
      const std::string r2 = io::to_json(equidist::conjecture_rows(s2, eps, ivs)[0]).dump();
      const std::string r4 = io::to_json(equidist::conjecture_rows(s4, eps, ivs)[0]).dump();
      const bool repro = r1 == r2 && r1 == r4;
      ok = ok && same && total && repro;
      detail += "A=" + std::to_string(A) + " K=" + std::to_string(s1.max_k) + " |S|=" + std::to_string(s1.size()) +
                " count[0,1/2]=" + std::to_string(rows[0].count) + " deviation=" + io::format_rational(rows[0].deviation) +
                (same && repro ? " reproducible" : " NOT reproducible") + fmt(" (%.1f s); ", dt);
    }
    return std::pair{ok, detail};
  });

  run(10, [] {
    if (found.empty()) found = search::brute_force_search(2000);
    std::size_t checks = 0, bad = 0;
    for (const auto& s : found) {
      for (std::uint64_t p : {2, 3, 5, 7}) {
        ++checks;
        bad += !search::digit_sum_identity_check(s, p);
      }
      if (s.k >= 2) {
        ++checks;
        bad += !search::bound_check(s);
      }
      for (std::uint64_t p : {2, 3, 5}) {
        ++checks;
        bad += !search::valuation_identity_check(s, p);
      }
    }
    return std::pair{bad == 0 && !found.empty(), std::to_string(found.size()) + " solutions, " +
                                                     std::to_string(checks) + " identity checks, " +
                                                     std::to_string(bad) + " failed"};
  });

  return failures == 0 ? 0 : 1;
}

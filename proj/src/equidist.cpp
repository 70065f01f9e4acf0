#include "fdl/equidist.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fdl/arith.hpp"
#include "fdl/parallel.hpp"

namespace fdl::equidist {

namespace {

Integer pow2(std::uint32_t bits) {
  Integer v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, bits);
  return v;
}

Integer floor_q(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil_q(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Rational make_q(const Integer& num, const Integer& den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

// Inclusive range of frac_num values whose sample lies in the interval.
struct NumRange {
  Integer lo;
  Integer hi;
};

NumRange numerator_range(const Interval& in, std::uint32_t precision_bits) {
  const Rational scale(pow2(precision_bits));
  const Rational lo = in.lo * scale;
  const Rational hi = in.hi * scale;
  NumRange r;
  r.lo = in.lo_open ? Integer(floor_q(lo) + 1) : ceil_q(lo);
  r.hi = in.hi_open ? Integer(ceil_q(hi) - 1) : floor_q(hi);
  return r;
}

}  // namespace

std::uint64_t KPolicy::max_k(std::uint64_t max_a) const {
  if (fixed_k) {
    if (*fixed_k < 2) throw std::invalid_argument("KPolicy: fixed K must be >= 2");
    return *fixed_k;
  }
  if (log_base != 0.0 && (log_base <= 1.0 || !std::isfinite(log_base))) {
    throw std::invalid_argument("KPolicy: log base must exceed 1");
  }
  const auto lg = [this](double v) { return log_base == 0.0 ? std::log(v) : std::log(v) / std::log(log_base); };
  const double inner = lg(static_cast<double>(max_a));
  if (!(inner > 1.0)) return 2;
  const double raw = std::floor(coefficient * lg(inner));
  if (!(raw > 2.0)) return 2;
  return static_cast<std::uint64_t>(raw);
}

SampleSet generate_samples(std::uint64_t max_a, std::uint32_t precision_bits, const KPolicy& policy,
                           unsigned threads) {
  if (max_a < 3) throw std::invalid_argument("generate_samples: A must be >= 3");
  if (precision_bits < 64) throw std::invalid_argument("generate_samples: precision must be >= 64 bits");
  SampleSet set;
  set.max_a = max_a;
  set.max_k = policy.max_k(max_a);
  set.precision_bits = precision_bits;

  const std::uint64_t per_a = set.max_k - 1;
  const std::uint64_t count_a = max_a - 1;
  set.samples.resize(count_a * per_a);

  const std::uint64_t chunks = std::min<std::uint64_t>(resolve_threads(threads), count_a);
  parallel_for(0, chunks, threads, [&](std::size_t chunk) {
    const std::uint64_t first = 2 + count_a * chunk / chunks;
    const std::uint64_t last = 2 + count_a * (chunk + 1) / chunks;  // exclusive
    Natural fact = arith::range_product(2, first);
    for (std::uint64_t a = first; a < last; ++a) {
      if (a != first) fact *= a;
      for (std::uint64_t k = 2; k <= set.max_k; ++k) {
        Sample& s = set.samples[(a - 2) * per_a + (k - 2)];
        s.a = a;
        s.k = k;
        s.frac_num = arith::kth_root_fixed(fact, k, precision_bits).frac_num;
      }
    }
  });
  return set;
}

Interval Interval::closed(Rational lo, Rational hi) {
  Interval in{std::move(lo), std::move(hi), false, false};
  in.validate();
  return in;
}

void Interval::validate() const {
  if (sgn(lo) < 0 || cmp(lo, hi) > 0 || cmp(hi, 1) > 0) {
    throw std::invalid_argument("interval must satisfy 0 <= lo <= hi <= 1");
  }
}

bool Interval::contains(const Rational& v) const {
  const int c_lo = cmp(v, lo);
  const int c_hi = cmp(v, hi);
  const bool above = lo_open ? c_lo > 0 : c_lo >= 0;
  const bool below = hi_open ? c_hi < 0 : c_hi <= 0;
  return above && below;
}

std::uint64_t interval_count(const SampleSet& set, const Interval& interval) {
  interval.validate();
  const NumRange r = numerator_range(interval, set.precision_bits);
  if (cmp(r.lo, r.hi) > 0) return 0;
  std::uint64_t n = 0;
  for (const auto& s : set.samples) {
    const Integer& v = s.frac_num.value();
    if (cmp(v, r.lo) >= 0 && cmp(v, r.hi) <= 0) ++n;
  }
  return n;
}

Rational star_discrepancy(std::span<const Rational> values) {
  if (values.empty()) throw std::invalid_argument("star_discrepancy: empty input");
  std::vector<Rational> xs(values.begin(), values.end());
  std::sort(xs.begin(), xs.end());
  const Rational n(static_cast<unsigned long>(xs.size()));
  Rational best = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const Rational up = Rational(static_cast<unsigned long>(i + 1)) / n - xs[i];
    const Rational down = xs[i] - Rational(static_cast<unsigned long>(i)) / n;
    if (cmp(up, best) > 0) best = up;
    if (cmp(down, best) > 0) best = down;
  }
  return best;
}

Rational star_discrepancy(const SampleSet& set) {
  if (set.samples.empty()) throw std::invalid_argument("star_discrepancy: empty sample set");
  std::vector<Integer> f;
  f.reserve(set.samples.size());
  for (const auto& s : set.samples) f.push_back(s.frac_num.value());
  std::sort(f.begin(), f.end());
  // Everything over the common denominator n * 2^P.
  const Integer scale = pow2(set.precision_bits);
  const Integer n(static_cast<unsigned long>(f.size()));
  Integer best = 0;
  for (std::size_t i = 0; i < f.size(); ++i) {
    const Integer nf = n * f[i];
    const Integer up = Integer(static_cast<unsigned long>(i + 1)) * scale - nf;
    const Integer down = nf - Integer(static_cast<unsigned long>(i)) * scale;
    if (cmp(up, best) > 0) best = up;
    if (cmp(down, best) > 0) best = down;
  }
  return make_q(best, n * scale);
}

bool CriticalInterval::contains(const Rational& frac) const {
  if (cmp(width, 1) >= 0) return true;
  if (k % 2 == 1) return sgn(frac) == 0 || cmp(frac, lo) >= 0;
  if (cmp(frac, lo) >= 0 && cmp(frac, hi) <= 0) return true;
  const Rational wrap = Rational(3, 2) - width;
  return cmp(wrap, 1) < 0 && cmp(frac, wrap) >= 0;
}

CriticalInterval critical_interval(std::uint64_t k, std::uint64_t c_floor) {
  if (k == 0 || c_floor <= k) throw std::invalid_argument("critical_interval: need c_floor > k >= 1");
  CriticalInterval ci;
  ci.k = k;
  ci.c_floor = c_floor;
  ci.width = make_q(Integer(static_cast<unsigned long>(k)) * k, Integer(static_cast<unsigned long>(c_floor - k)));
  const Rational top = k % 2 == 1 ? Rational(1) : Rational(1, 2);
  ci.hi = top;
  ci.lo = top - ci.width;
  if (sgn(ci.lo) < 0) ci.lo = 0;
  return ci;
}

std::uint64_t default_gamma(std::uint64_t max_a) {
  Integer r;
  const Integer n(static_cast<unsigned long>(max_a));
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  if (cmp(Integer(r * r), n) < 0) r += 1;
  return r.get_ui();
}

CriticalHits critical_hits(const SampleSet& set, std::uint64_t gamma) {
  if (gamma <= set.max_k) throw std::invalid_argument("critical_hits: gamma must exceed K");
  CriticalHits out;
  const std::uint64_t k_even = set.max_k % 2 == 0 ? set.max_k : set.max_k - 1;
  const std::uint64_t k_odd = set.max_k % 2 == 1 ? set.max_k : set.max_k - 1;
  out.even = critical_interval(k_even, gamma);
  if (k_odd >= 3) out.odd = critical_interval(k_odd, gamma);
  const Integer scale = pow2(set.precision_bits);
  for (const auto& s : set.samples) {
    const Rational v = make_q(s.frac_num.value(), scale);
    bool hit = false;
    if (s.k % 2 == 0) {
      ++out.even_samples;
      hit = out.even.contains(v);
      if (hit) ++out.even_hits;
    } else {
      ++out.odd_samples;
      hit = out.odd && out.odd->contains(v);
      if (hit) ++out.odd_hits;
    }
    if (hit) out.hits.emplace_back(s.a, s.k);
  }
  return out;
}

std::vector<ConjectureRow> conjecture_rows(const SampleSet& set, std::span<const double> epsilons,
                                           std::span<const Interval> intervals) {
  std::vector<ConjectureRow> rows;
  const double size_d = static_cast<double>(set.size());
  for (const auto& in : intervals) {
    ConjectureRow row;
    row.max_a = set.max_a;
    row.size = set.size();
    row.interval = in;
    row.count = interval_count(set, in);
    row.deviation = Rational(Integer(static_cast<unsigned long>(row.count))) -
                    Rational(Integer(static_cast<unsigned long>(row.size))) * in.length();
    row.deviation.canonicalize();
    row.epsilons.assign(epsilons.begin(), epsilons.end());
    for (double eps : epsilons) row.thresholds.push_back(std::pow(size_d, 1.0 - eps));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<ConjectureRow> conjecture_report(std::span<const std::uint64_t> max_a_list,
                                             std::span<const double> epsilons,
                                             std::span<const Interval> intervals,
                                             std::uint32_t precision_bits, const KPolicy& policy,
                                             unsigned threads) {
  if (max_a_list.empty() || intervals.empty()) {
    throw std::invalid_argument("conjecture_report: A list and interval list must be nonempty");
  }
  for (const auto& in : intervals) in.validate();
  std::vector<ConjectureRow> rows;
  for (std::uint64_t a : max_a_list) {
    const SampleSet set = generate_samples(a, precision_bits, policy, threads);
    auto part = conjecture_rows(set, epsilons, intervals);
    rows.insert(rows.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return rows;
}

}  // namespace fdl::equidist

#include "fdl/lemma_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <mpfr.h>

namespace fdl::arith {

namespace {

// Minimal RAII holder for an mpfr_t.
class Real {
 public:
  explicit Real(mpfr_prec_t prec) { mpfr_init2(v_, prec); }
  ~Real() { mpfr_clear(v_); }
  Real(const Real&) = delete;
  Real& operator=(const Real&) = delete;

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// Internal working precision: extra bits absorb cancellation when the
// compared quantities are as large as 10^6.
mpfr_prec_t working_precision(std::uint32_t p) { return static_cast<mpfr_prec_t>(p) + 96; }

double exp_margin(const Rational& x, mpfr_prec_t prec) {
  if (cmp(x, 1) == 0) return std::numeric_limits<double>::infinity();
  Real xv(prec), lhs(prec), rhs(prec), t(prec);
  mpfr_set_q(xv.get(), x.get_mpq_t(), MPFR_RNDN);
  // lhs = exp(-log1p(-x) / x)
  mpfr_neg(t.get(), xv.get(), MPFR_RNDN);
  mpfr_log1p(t.get(), t.get(), MPFR_RNDN);
  mpfr_div(t.get(), t.get(), xv.get(), MPFR_RNDN);
  mpfr_neg(t.get(), t.get(), MPFR_RNDN);
  mpfr_exp(lhs.get(), t.get(), MPFR_RNDN);
  // rhs = e * (1 + x/2)
  mpfr_div_ui(t.get(), xv.get(), 2, MPFR_RNDN);
  mpfr_add_ui(t.get(), t.get(), 1, MPFR_RNDN);
  mpfr_set_ui(rhs.get(), 1, MPFR_RNDN);
  mpfr_exp(rhs.get(), rhs.get(), MPFR_RNDN);
  mpfr_mul(rhs.get(), rhs.get(), t.get(), MPFR_RNDN);
  mpfr_sub(t.get(), lhs.get(), rhs.get(), MPFR_RNDN);
  return mpfr_get_d(t.get(), MPFR_RNDN);
}

struct FallingMargins {
  double lower;
  double upper;
};

FallingMargins falling_margins(std::uint64_t k, const Rational& r, mpfr_prec_t prec) {
  Real rv(prec), prod(prec), term(prec), mid(prec), bound(prec);
  mpfr_set_q(rv.get(), r.get_mpq_t(), MPFR_RNDN);
  mpfr_set_ui(prod.get(), 1, MPFR_RNDN);
  for (std::uint64_t j = 0; j < k; ++j) {
    mpfr_sub_ui(term.get(), rv.get(), static_cast<unsigned long>(j), MPFR_RNDN);
    mpfr_mul(prod.get(), prod.get(), term.get(), MPFR_RNDN);
  }
  mpfr_rootn_ui(prod.get(), prod.get(), static_cast<unsigned long>(k), MPFR_RNDN);

  // mid = (r - (k-1)/2) - root, with the shift taken exactly.
  Rational half_width(static_cast<unsigned long>(k - 1), 2UL);
  half_width.canonicalize();
  Rational shifted = r - half_width;
  mpfr_set_q(mid.get(), shifted.get_mpq_t(), MPFR_RNDN);
  mpfr_sub(mid.get(), mid.get(), prod.get(), MPFR_RNDN);

  Rational upper = Rational(Integer(k) * Integer(k)) / (r - Integer(k));
  mpfr_set_q(bound.get(), upper.get_mpq_t(), MPFR_RNDN);
  mpfr_sub(bound.get(), bound.get(), mid.get(), MPFR_RNDN);
  return {mpfr_get_d(mid.get(), MPFR_RNDN), mpfr_get_d(bound.get(), MPFR_RNDN)};
}

}  // namespace

LemmaGrid LemmaGrid::defaults(std::uint32_t precision_bits) {
  LemmaGrid g;
  g.precision_bits = precision_bits;
  for (unsigned long j = 1; j <= 1000; ++j) {
    Rational x(j, 1000UL);
    x.canonicalize();
    g.x_values.push_back(x);
  }
  for (std::uint64_t k = 2; k <= 50; ++k) {
    for (std::uint64_t r = k + 1; r <= k + 100; ++r) {
      g.falling_points.push_back({k, Rational(Integer(r))});
    }
    g.falling_points.push_back({k, Rational(1000)});
    g.falling_points.push_back({k, Rational(1000000)});
  }
  return g;
}

LemmaReport verify_lemma_bounds(const LemmaGrid& grid) {
  if (grid.precision_bits < 64) {
    throw std::invalid_argument("verify_lemma_bounds: precision must be >= 64 bits");
  }
  if (grid.guard_bits >= grid.precision_bits) {
    throw std::invalid_argument("verify_lemma_bounds: guard must be below precision");
  }
  for (const auto& x : grid.x_values) {
    if (sgn(x) <= 0 || cmp(x, 1) > 0) {
      throw std::invalid_argument("verify_lemma_bounds: x must lie in (0, 1]");
    }
  }
  for (const auto& fp : grid.falling_points) {
    if (fp.k < 2) throw std::invalid_argument("verify_lemma_bounds: k must be >= 2");
    if (cmp(fp.r, Integer(fp.k)) <= 0) {
      throw std::invalid_argument("verify_lemma_bounds: r must exceed k");
    }
  }

  LemmaReport report;
  report.precision_bits = grid.precision_bits;
  report.guard_bits = grid.guard_bits;
  report.tolerance_exponent = 1 - static_cast<int>(grid.precision_bits - grid.guard_bits);
  const double tolerance = std::ldexp(1.0, report.tolerance_exponent);
  const mpfr_prec_t prec = working_precision(grid.precision_bits);

  report.min_margin = std::numeric_limits<double>::infinity();
  report.pass = true;
  for (const auto& x : grid.x_values) {
    LemmaPoint pt;
    pt.kind = LemmaKind::ExpInequality;
    pt.point = x;
    pt.lower_margin = exp_margin(x, prec);
    pt.upper_margin = std::numeric_limits<double>::infinity();
    pt.pass = pt.lower_margin >= -tolerance;
    report.min_margin = std::min(report.min_margin, pt.lower_margin);
    report.pass = report.pass && pt.pass;
    report.points.push_back(std::move(pt));
  }
  for (const auto& fp : grid.falling_points) {
    LemmaPoint pt;
    pt.kind = LemmaKind::FallingRoot;
    pt.k = fp.k;
    pt.point = fp.r;
    const auto m = falling_margins(fp.k, fp.r, prec);
    pt.lower_margin = m.lower;
    pt.upper_margin = m.upper;
    pt.pass = m.lower >= -tolerance && m.upper >= -tolerance;
    report.min_margin = std::min({report.min_margin, m.lower, m.upper});
    report.pass = report.pass && pt.pass;
    report.points.push_back(std::move(pt));
  }
  return report;
}

}  // namespace fdl::arith

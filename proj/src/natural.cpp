#include "fdl/natural.hpp"

#include <stdexcept>

namespace fdl {

Natural::Natural(std::uint64_t v) : v_(static_cast<unsigned long>(v)) {}

Natural::Natural(const Integer& v) : v_(v) {
  if (sgn(v_) < 0) throw std::domain_error("Natural: negative value");
}

Natural::Natural(Integer&& v) : v_(std::move(v)) {
  if (sgn(v_) < 0) throw std::domain_error("Natural: negative value");
}

Natural Natural::from_decimal(std::string_view text) {
  if (text.empty()) throw std::invalid_argument("Natural: empty decimal string");
  for (char ch : text) {
    if (ch < '0' || ch > '9') {
      throw std::invalid_argument("Natural: non-digit in decimal string '" +
                                  std::string(text) + "'");
    }
  }
  if (text.size() > 1 && text.front() == '0') {
    throw std::invalid_argument("Natural: leading zero in decimal string");
  }
  return Natural(Integer(std::string(text), 10));
}

std::string Natural::to_decimal() const { return v_.get_str(10); }

std::size_t Natural::bit_length() const {
  return is_zero() ? 0 : mpz_sizeinbase(v_.get_mpz_t(), 2);
}

bool Natural::fits_u64() const { return mpz_fits_ulong_p(v_.get_mpz_t()) != 0; }

std::uint64_t Natural::to_u64() const {
  if (!fits_u64()) throw std::overflow_error("Natural: value exceeds 64 bits");
  return v_.get_ui();
}

Natural& Natural::operator+=(const Natural& o) {
  v_ += o.v_;
  return *this;
}

Natural& Natural::operator-=(const Natural& o) {
  if (cmp(v_, o.v_) < 0) throw std::domain_error("Natural: subtraction underflow");
  v_ -= o.v_;
  return *this;
}

Natural& Natural::operator*=(const Natural& o) {
  v_ *= o.v_;
  return *this;
}

Natural& Natural::operator*=(std::uint64_t o) {
  mpz_mul_ui(v_.get_mpz_t(), v_.get_mpz_t(), static_cast<unsigned long>(o));
  return *this;
}

Natural& Natural::operator/=(const Natural& o) {
  if (o.is_zero()) throw std::domain_error("Natural: division by zero");
  mpz_fdiv_q(v_.get_mpz_t(), v_.get_mpz_t(), o.v_.get_mpz_t());
  return *this;
}

Natural& Natural::operator%=(const Natural& o) {
  if (o.is_zero()) throw std::domain_error("Natural: division by zero");
  mpz_fdiv_r(v_.get_mpz_t(), v_.get_mpz_t(), o.v_.get_mpz_t());
  return *this;
}

Natural& Natural::operator<<=(std::size_t bits) {
  mpz_mul_2exp(v_.get_mpz_t(), v_.get_mpz_t(), bits);
  return *this;
}

Natural& Natural::operator>>=(std::size_t bits) {
  mpz_fdiv_q_2exp(v_.get_mpz_t(), v_.get_mpz_t(), bits);
  return *this;
}

Natural pow(const Natural& base, std::uint64_t exp) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.value().get_mpz_t(), static_cast<unsigned long>(exp));
  return Natural(std::move(r));
}

}  // namespace fdl

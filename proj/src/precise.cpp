#include "cantor/precise.hpp"

#include <cstring>
#include <vector>

#include <gmp.h>

#include "cantor/errors.hpp"

namespace cantor {

BigFloat::BigFloat(mpfr_prec_t bits) { mpfr_init2(value_, bits); mpfr_set_zero(value_, 1); }

BigFloat::BigFloat(const BigFloat& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

BigFloat::BigFloat(BigFloat&& other) noexcept {
  std::memcpy(value_, other.value_, sizeof(mpfr_t));
  other.owns_ = false;
}

BigFloat& BigFloat::operator=(const BigFloat& other) {
  if (this == &other) return *this;
  if (!owns_) {
    mpfr_init2(value_, other.precision());
    owns_ = true;
  } else {
    mpfr_set_prec(value_, other.precision());
  }
  mpfr_set(value_, other.value_, MPFR_RNDN);
  return *this;
}

BigFloat& BigFloat::operator=(BigFloat&& other) noexcept {
  if (this == &other) return *this;
  if (owns_) mpfr_clear(value_);
  std::memcpy(value_, other.value_, sizeof(mpfr_t));
  owns_ = other.owns_;
  other.owns_ = false;
  return *this;
}

BigFloat::~BigFloat() {
  if (owns_) mpfr_clear(value_);
}

Rational BigFloat::to_rational() const {
  if (!mpfr_number_p(value_)) throw DomainError("non-finite value has no rational form");
  if (mpfr_zero_p(value_)) return Rational(0);
  mpz_t mantissa;
  mpz_init(mantissa);
  mpfr_exp_t exponent = mpfr_get_z_2exp(mantissa, value_);
  int sign = mpz_sgn(mantissa);
  mpz_abs(mantissa, mantissa);
  std::size_t count = 0;
  std::vector<unsigned char> bytes((mpz_sizeinbase(mantissa, 2) + 7) / 8 + 1);
  mpz_export(bytes.data(), &count, 1, 1, 1, 0, mantissa);
  mpz_clear(mantissa);
  Integer num;
  boost::multiprecision::import_bits(num, bytes.begin(), bytes.begin() + static_cast<std::ptrdiff_t>(count));
  if (sign < 0) num = -num;
  if (exponent >= 0) return Rational(num << static_cast<unsigned>(exponent));
  return make_rational(num, Integer(1) << static_cast<unsigned>(-exponent));
}

std::string BigFloat::to_decimal(int digits) const {
  std::vector<char> buffer(static_cast<std::size_t>(digits) + 64);
  mpfr_snprintf(buffer.data(), buffer.size(), "%.*Rg", digits, value_);
  return std::string(buffer.data());
}

Enclosure::Enclosure(mpfr_prec_t bits) : lo_(bits), hi_(bits) {}

Enclosure Enclosure::exact(const Rational& q, mpfr_prec_t bits) {
  Enclosure e(bits);
  mpz_t num, den;
  mpz_init_set_str(num, numerator_of(q).str().c_str(), 10);
  mpz_init_set_str(den, denominator_of(q).str().c_str(), 10);
  mpq_t value;
  mpq_init(value);
  mpq_set_num(value, num);
  mpq_set_den(value, den);
  mpfr_set_q(e.lo_.get(), value, MPFR_RNDD);
  mpfr_set_q(e.hi_.get(), value, MPFR_RNDU);
  mpq_clear(value);
  mpz_clear(num);
  mpz_clear(den);
  return e;
}

Enclosure Enclosure::from_integer(long value, mpfr_prec_t bits) {
  Enclosure e(bits);
  mpfr_set_si(e.lo_.get(), value, MPFR_RNDD);
  mpfr_set_si(e.hi_.get(), value, MPFR_RNDU);
  return e;
}

Enclosure Enclosure::log_of(std::uint64_t n, mpfr_prec_t bits) {
  if (n == 0) throw DomainError("log of zero");
  Enclosure e(bits);
  mpfr_set_ui(e.lo_.get(), n, MPFR_RNDD);
  mpfr_set_ui(e.hi_.get(), n, MPFR_RNDU);
  mpfr_log(e.lo_.get(), e.lo_.get(), MPFR_RNDD);
  mpfr_log(e.hi_.get(), e.hi_.get(), MPFR_RNDU);
  return e;
}

Rational Enclosure::width() const { return hi_.to_rational() - lo_.to_rational(); }

double Enclosure::width_double() const {
  BigFloat w(precision());
  mpfr_sub(w.get(), hi_.get(), lo_.get(), MPFR_RNDU);
  return mpfr_get_d(w.get(), MPFR_RNDU);
}

double Enclosure::mid_double() const {
  BigFloat m(precision() + 1);
  mpfr_add(m.get(), lo_.get(), hi_.get(), MPFR_RNDN);
  mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
  return m.to_double();
}

bool Enclosure::contains(const Rational& q) const {
  return lo_.to_rational() <= q && q <= hi_.to_rational();
}

Enclosure Enclosure::operator+(const Enclosure& other) const {
  Enclosure r(precision());
  mpfr_add(r.lo_.get(), lo_.get(), other.lo_.get(), MPFR_RNDD);
  mpfr_add(r.hi_.get(), hi_.get(), other.hi_.get(), MPFR_RNDU);
  return r;
}

Enclosure Enclosure::operator-(const Enclosure& other) const {
  Enclosure r(precision());
  mpfr_sub(r.lo_.get(), lo_.get(), other.hi_.get(), MPFR_RNDD);
  mpfr_sub(r.hi_.get(), hi_.get(), other.lo_.get(), MPFR_RNDU);
  return r;
}

Enclosure Enclosure::operator-() const {
  Enclosure r(precision());
  mpfr_neg(r.lo_.get(), hi_.get(), MPFR_RNDD);
  mpfr_neg(r.hi_.get(), lo_.get(), MPFR_RNDU);
  return r;
}

Enclosure Enclosure::times(long factor) const {
  Enclosure r(precision());
  if (factor >= 0) {
    mpfr_mul_si(r.lo_.get(), lo_.get(), factor, MPFR_RNDD);
    mpfr_mul_si(r.hi_.get(), hi_.get(), factor, MPFR_RNDU);
  } else {
    mpfr_mul_si(r.lo_.get(), hi_.get(), factor, MPFR_RNDD);
    mpfr_mul_si(r.hi_.get(), lo_.get(), factor, MPFR_RNDU);
  }
  return r;
}

Enclosure Enclosure::times_unsigned(unsigned long factor) const {
  Enclosure r(precision());
  mpfr_mul_ui(r.lo_.get(), lo_.get(), factor, MPFR_RNDD);
  mpfr_mul_ui(r.hi_.get(), hi_.get(), factor, MPFR_RNDU);
  return r;
}

Enclosure Enclosure::divided_by_positive(const Enclosure& other) const {
  if (mpfr_sgn(other.lo_.get()) <= 0) throw DomainError("divisor enclosure is not strictly positive");
  Enclosure r(precision());
  // lo / hi' when lo >= 0, lo / lo' otherwise; symmetric for the upper end
  if (mpfr_sgn(lo_.get()) >= 0) {
    mpfr_div(r.lo_.get(), lo_.get(), other.hi_.get(), MPFR_RNDD);
  } else {
    mpfr_div(r.lo_.get(), lo_.get(), other.lo_.get(), MPFR_RNDD);
  }
  if (mpfr_sgn(hi_.get()) >= 0) {
    mpfr_div(r.hi_.get(), hi_.get(), other.lo_.get(), MPFR_RNDU);
  } else {
    mpfr_div(r.hi_.get(), hi_.get(), other.hi_.get(), MPFR_RNDU);
  }
  return r;
}

Enclosure Enclosure::times_positive(const Enclosure& other) const {
  if (mpfr_sgn(other.lo_.get()) < 0) throw DomainError("factor enclosure is not nonnegative");
  Enclosure r(precision());
  if (mpfr_sgn(lo_.get()) >= 0) {
    mpfr_mul(r.lo_.get(), lo_.get(), other.lo_.get(), MPFR_RNDD);
  } else {
    mpfr_mul(r.lo_.get(), lo_.get(), other.hi_.get(), MPFR_RNDD);
  }
  if (mpfr_sgn(hi_.get()) >= 0) {
    mpfr_mul(r.hi_.get(), hi_.get(), other.hi_.get(), MPFR_RNDU);
  } else {
    mpfr_mul(r.hi_.get(), hi_.get(), other.lo_.get(), MPFR_RNDU);
  }
  return r;
}

Enclosure Enclosure::exp() const {
  Enclosure r(precision());
  mpfr_exp(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_exp(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Enclosure Enclosure::log() const {
  if (mpfr_sgn(lo_.get()) <= 0) throw DomainError("log of a non-positive enclosure");
  Enclosure r(precision());
  mpfr_log(r.lo_.get(), lo_.get(), MPFR_RNDD);
  mpfr_log(r.hi_.get(), hi_.get(), MPFR_RNDU);
  return r;
}

Enclosure Enclosure::power_of(std::uint64_t base) const {
  if (base < 2) throw DomainError("power base must be at least 2");
  Enclosure log_base = Enclosure::log_of(base, precision());
  Enclosure exponent(precision());
  // x * log(base) with log(base) > 0
  exponent = times_positive(log_base);
  return exponent.exp();
}

}  // namespace cantor

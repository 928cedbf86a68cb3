#pragma once

// Certified real enclosures on top of MPFR. Every operation rounds the lower
// endpoint down and the upper endpoint up, so the true value always lies in
// [lo, hi].

#include <cstdint>
#include <string>

#include <mpfr.h>

#include "cantor/numeric.hpp"

namespace cantor {

// RAII owner of one mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t bits);
  BigFloat(const BigFloat& other);
  BigFloat(BigFloat&& other) noexcept;
  BigFloat& operator=(const BigFloat& other);
  BigFloat& operator=(BigFloat&& other) noexcept;
  ~BigFloat();

  mpfr_ptr get() { return value_; }
  mpfr_srcptr get() const { return value_; }
  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  // Exact: every finite binary float is a dyadic rational.
  Rational to_rational() const;
  std::string to_decimal(int digits) const;

 private:
  mpfr_t value_;
  bool owns_ = true;
};

class Enclosure {
 public:
  explicit Enclosure(mpfr_prec_t bits);

  static Enclosure exact(const Rational& q, mpfr_prec_t bits);
  static Enclosure from_integer(long value, mpfr_prec_t bits);
  // log(n) for n >= 1.
  static Enclosure log_of(std::uint64_t n, mpfr_prec_t bits);

  const BigFloat& lo() const { return lo_; }
  const BigFloat& hi() const { return hi_; }
  BigFloat& lo() { return lo_; }
  BigFloat& hi() { return hi_; }
  mpfr_prec_t precision() const { return lo_.precision(); }

  Rational width() const;
  double width_double() const;
  double mid_double() const;
  Rational lo_rational() const { return lo_.to_rational(); }
  Rational hi_rational() const { return hi_.to_rational(); }

  bool contains(const Rational& q) const;
  bool is_point() const { return mpfr_equal_p(lo_.get(), hi_.get()) != 0; }

  Enclosure operator+(const Enclosure& other) const;
  Enclosure operator-(const Enclosure& other) const;
  Enclosure operator-() const;
  Enclosure times(long factor) const;
  Enclosure times_unsigned(unsigned long factor) const;
  // Division by an enclosure that is strictly positive.
  Enclosure divided_by_positive(const Enclosure& other) const;
  Enclosure times_positive(const Enclosure& other) const;
  // base^x for base > 1 (monotone increasing in x).
  Enclosure power_of(std::uint64_t base) const;
  Enclosure exp() const;
  // log of a strictly positive enclosure.
  Enclosure log() const;

 private:
  BigFloat lo_;
  BigFloat hi_;
};

}  // namespace cantor

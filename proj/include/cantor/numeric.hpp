#pragma once

// Exact integer and rational types shared by every module.

#include <cstdint>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace cantor {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Integer numerator_of(const Rational& q) { return boost::multiprecision::numerator(q); }
inline Integer denominator_of(const Rational& q) { return boost::multiprecision::denominator(q); }

// num/den in canonical reduced form; den must be nonzero.
Rational make_rational(const Integer& num, const Integer& den);

Integer ipow(const Integer& base, unsigned exponent);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);

// Largest integer <= q.
Integer floor_of(const Rational& q);

// Accepts "7", "-3/4" and finite decimals such as "2.5" or "-0.125".
Rational parse_rational(std::string_view text);

// "p/q", or "p" when q == 1.
std::string to_string(const Rational& q);
// Always "p/q" (the canonical interval serialization form).
std::string to_fraction_string(const Rational& q);

double to_double(const Rational& q);

// Exact rational value of a finite double.
Rational rational_from_double(double x);

}  // namespace cantor

#include "cantor/numeric.hpp"

#include <cmath>
#include <limits>

#include "cantor/errors.hpp"

namespace cantor {

Rational make_rational(const Integer& num, const Integer& den) {
  if (den == 0) throw DomainError("rational with zero denominator");
  return Rational(num, den);
}

Integer ipow(const Integer& base, unsigned exponent) {
  return boost::multiprecision::pow(base, exponent);
}

Integer gcd(const Integer& a, const Integer& b) { return boost::multiprecision::gcd(a, b); }

Integer lcm(const Integer& a, const Integer& b) {
  if (a == 0 || b == 0) return 0;
  return boost::multiprecision::abs(a / gcd(a, b) * b);
}

Integer floor_of(const Rational& q) {
  Integer num = numerator_of(q);
  Integer den = denominator_of(q);
  Integer quot = num / den;  // truncates toward zero
  if (num < 0 && quot * den != num) quot -= 1;
  return quot;
}

namespace {

Integer parse_integer(std::string_view text) {
  if (text.empty()) throw DomainError("empty number");
  std::size_t i = 0;
  bool negative = false;
  if (text[0] == '-' || text[0] == '+') {
    negative = text[0] == '-';
    i = 1;
  }
  if (i == text.size()) throw DomainError("malformed number '" + std::string(text) + "'");
  Integer value = 0;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c < '0' || c > '9') throw DomainError("malformed number '" + std::string(text) + "'");
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && (text.front() == ' ' || text.front() == '\t')) text.remove_prefix(1);
  while (!text.empty() && (text.back() == ' ' || text.back() == '\t' || text.back() == '\r')) {
    text.remove_suffix(1);
  }
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(text.substr(0, slash));
    Integer den = parse_integer(text.substr(slash + 1));
    return make_rational(num, den);
  }
  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view whole = text.substr(0, dot);
    std::string_view frac = text.substr(dot + 1);
    bool negative = !whole.empty() && whole.front() == '-';
    if (whole.empty() || whole == "-" || whole == "+") whole = "0";
    if (frac.empty()) throw DomainError("malformed number '" + std::string(text) + "'");
    Integer int_part = boost::multiprecision::abs(parse_integer(whole));
    Integer frac_part = parse_integer(frac);
    if (frac_part < 0) throw DomainError("malformed number '" + std::string(text) + "'");
    Integer scale = ipow(Integer(10), static_cast<unsigned>(frac.size()));
    Rational value = make_rational(int_part * scale + frac_part, scale);
    return negative ? Rational(-value) : value;
  }
  return Rational(parse_integer(text));
}

std::string to_string(const Rational& q) {
  if (denominator_of(q) == 1) return numerator_of(q).str();
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

std::string to_fraction_string(const Rational& q) {
  return numerator_of(q).str() + "/" + denominator_of(q).str();
}

double to_double(const Rational& q) { return q.convert_to<double>(); }

Rational rational_from_double(double x) {
  if (!std::isfinite(x)) throw DomainError("non-finite value has no rational form");
  int exponent = 0;
  double mantissa = std::frexp(x, &exponent);
  // mantissa in [0.5, 1): scale to a 53-bit integer
  auto scaled = static_cast<std::int64_t>(std::ldexp(mantissa, 53));
  exponent -= 53;
  Integer num = scaled;
  if (exponent >= 0) return Rational(num << exponent);
  return make_rational(num, Integer(1) << -exponent);
}

}  // namespace cantor

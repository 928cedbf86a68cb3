#include "cantor/digits.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

void check_base(int base) {
  if (base < 2) throw DomainError("base must be at least 2, got " + std::to_string(base));
  if (base > kMaxBase) throw DomainError("base exceeds supported maximum " + std::to_string(kMaxBase));
}

}  // namespace

Integer DigitExpansion::value() const {
  Integer v = 0;
  for (int d : digits) v = v * base + d;
  return v;
}

std::string DigitExpansion::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(digits[i]);
  }
  return out;
}

DigitSetSpec::DigitSetSpec(int base, std::vector<int> allowed) : base_(base) {
  check_base(base);
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  if (allowed.empty()) throw DomainError("digit set must be nonempty");
  if (allowed.front() < 0 || allowed.back() >= base) {
    throw DomainError("digit set not contained in {0,...," + std::to_string(base - 1) + "}");
  }
  allowed_ = std::move(allowed);
  mask_.assign(static_cast<std::size_t>(base), 0);
  for (int d : allowed_) mask_[static_cast<std::size_t>(d)] = 1;
}

DigitSetSpec DigitSetSpec::full(int base) {
  check_base(base);
  std::vector<int> all(static_cast<std::size_t>(base));
  for (int d = 0; d < base; ++d) all[static_cast<std::size_t>(d)] = d;
  return DigitSetSpec(base, std::move(all));
}

DigitSetSpec DigitSetSpec::nonzero(int base) {
  check_base(base);
  std::vector<int> digits;
  for (int d = 1; d < base; ++d) digits.push_back(d);
  return DigitSetSpec(base, std::move(digits));
}

DigitSetSpec DigitSetSpec::lower_half(int p) {
  check_base(p);
  std::vector<int> digits;
  for (int d = 0; d <= (p - 1) / 2; ++d) digits.push_back(d);
  return DigitSetSpec(p, std::move(digits));
}

std::string DigitSetSpec::to_string() const {
  std::ostringstream out;
  out << base_ << ":{";
  for (std::size_t i = 0; i < allowed_.size(); ++i) out << (i ? "," : "") << allowed_[i];
  out << '}';
  return out.str();
}

DigitExpansion digits_of(std::uint64_t n, int base) {
  check_base(base);
  DigitExpansion e{base, {}};
  const auto b = static_cast<std::uint64_t>(base);
  while (n > 0) {
    e.digits.push_back(static_cast<int>(n % b));
    n /= b;
  }
  std::reverse(e.digits.begin(), e.digits.end());
  return e;
}

DigitExpansion digits_of(const Integer& n, int base) {
  check_base(base);
  if (n < 0) throw DomainError("digits_of requires a nonnegative integer");
  DigitExpansion e{base, {}};
  Integer rest = n;
  Integer q, r;
  while (rest > 0) {
    boost::multiprecision::divide_qr(rest, Integer(base), q, r);
    e.digits.push_back(static_cast<int>(r));
    rest = q;
  }
  std::reverse(e.digits.begin(), e.digits.end());
  return e;
}

bool uses_only(std::uint64_t n, const DigitSetSpec& spec) {
  if (n == 0) return spec.contains(0);
  const auto b = static_cast<std::uint64_t>(spec.base());
  while (n > 0) {
    if (!spec.contains(static_cast<int>(n % b))) return false;
    n /= b;
  }
  return true;
}

bool uses_only(const Integer& n, const DigitSetSpec& spec) {
  if (n < 0) throw DomainError("uses_only requires a nonnegative integer");
  if (n <= std::numeric_limits<std::uint64_t>::max()) {
    return uses_only(static_cast<std::uint64_t>(n), spec);
  }
  for (int d : digits_of(n, spec.base()).digits) {
    if (!spec.contains(d)) return false;
  }
  return true;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (std::uint64_t f = 5; f <= n / f; f += 6) {
    if (n % f == 0 || n % (f + 2) == 0) return false;
  }
  return true;
}

bool kummer_divides(std::uint64_t p, std::uint64_t n) {
  if (p == 2) throw DomainError("kummer_divides requires an odd prime");
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (n == 0) throw DomainError("kummer_divides requires n >= 1");
  const std::uint64_t half = (p - 1) / 2;
  while (n > 0) {
    if (n % p > half) return true;
    n /= p;
  }
  return false;
}

Integer binom_gcd_oracle(std::uint64_t n, const Integer& m) {
  if (n < 1 || m < 1) throw DomainError("binom_gcd_oracle requires n >= 1 and m >= 1");
  if (n > kBinomOracleMaxN) {
    throw CapacityError("binom_gcd_oracle: n = " + std::to_string(n) + " exceeds the exact-arithmetic cap " +
                        std::to_string(kBinomOracleMaxN));
  }
  // binom(n+i, i) = binom(n+i-1, i-1) * (n+i) / i, exact at every step
  Integer binom = 1;
  for (std::uint64_t i = 1; i <= n; ++i) {
    binom *= (n + i);
    binom /= i;
  }
  return gcd(binom, m);
}

std::vector<int> parse_digit_list(const std::string& text) {
  std::vector<int> digits;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    auto first = item.find_first_not_of(" \t");
    if (first == std::string::npos) throw DomainError("empty entry in digit list '" + text + "'");
    auto last = item.find_last_not_of(" \t");
    std::string token = item.substr(first, last - first + 1);
    std::size_t used = 0;
    int value = 0;
    try {
      value = std::stoi(token, &used);
    } catch (const std::exception&) {
      throw DomainError("malformed digit '" + token + "'");
    }
    if (used != token.size()) throw DomainError("malformed digit '" + token + "'");
    digits.push_back(value);
  }
  if (digits.empty()) throw DomainError("empty digit list");
  std::sort(digits.begin(), digits.end());
  return digits;
}

}  // namespace cantor

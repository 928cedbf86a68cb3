#pragma once

// Base-b digit expansions, restricted-digit membership and Kummer's
// criterion for odd primes dividing the central binomial coefficient.

#include <cstdint>
#include <string>
#include <vector>

#include "cantor/numeric.hpp"

namespace cantor {

// Most significant digit first, no leading zero; zero is the empty sequence.
struct DigitExpansion {
  int base = 10;
  std::vector<int> digits;

  Integer value() const;
  std::string to_string() const;  // e.g. "1,0,1"
  bool operator==(const DigitExpansion&) const = default;
};

// A base together with the digits an expansion may use.
class DigitSetSpec {
 public:
  DigitSetSpec(int base, std::vector<int> allowed);

  static DigitSetSpec full(int base);
  static DigitSetSpec nonzero(int base);
  // {0, ..., (p-1)/2}: the digits Kummer allows for p not dividing binom(2n, n).
  static DigitSetSpec lower_half(int p);

  int base() const { return base_; }
  const std::vector<int>& allowed() const { return allowed_; }
  std::size_t size() const { return allowed_.size(); }
  bool contains(int digit) const {
    return digit >= 0 && digit < base_ && mask_[static_cast<std::size_t>(digit)] != 0;
  }
  bool is_full() const { return allowed_.size() == static_cast<std::size_t>(base_); }
  std::string to_string() const;  // "3:{0,1}"

  bool operator==(const DigitSetSpec& other) const {
    return base_ == other.base_ && allowed_ == other.allowed_;
  }

 private:
  int base_;
  std::vector<int> allowed_;
  std::vector<char> mask_;
};

// Largest accepted base; digit masks are dense.
inline constexpr int kMaxBase = 1 << 16;

DigitExpansion digits_of(const Integer& n, int base);
DigitExpansion digits_of(std::uint64_t n, int base);

bool uses_only(std::uint64_t n, const DigitSetSpec& spec);
bool uses_only(const Integer& n, const DigitSetSpec& spec);

// Deterministic trial division.
bool is_prime(std::uint64_t n);

// True iff the odd prime p divides binom(2n, n), decided from the base-p
// digits of n alone.
bool kummer_divides(std::uint64_t p, std::uint64_t n);

// Practical bound on n for the exact binomial oracle.
inline constexpr std::uint64_t kBinomOracleMaxN = 20000;

// gcd(binom(2n, n), m) by exact big-integer arithmetic.
Integer binom_gcd_oracle(std::uint64_t n, const Integer& m);

// Parses "0,1,2" into a sorted digit list.
std::vector<int> parse_digit_list(const std::string& text);

}  // namespace cantor

#pragma once

// Finite unions of closed intervals with exact rational endpoints.
//
// All endpoints are stored as integer numerators over one shared positive
// denominator. Lengths, comparisons and gap searches therefore run on plain
// integers; Rational values are produced only at the API boundary.

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "cantor/numeric.hpp"

namespace cantor {

namespace detail {
// Sorts interval pairs by left end and merges overlapping or touching ones in
// place. Throws DomainError on odd length or hi < lo.
void merge_scaled(std::vector<std::int64_t>& ends);
}  // namespace detail

struct Interval {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool contains(const Rational& x) const { return lo <= x && x <= hi; }
  bool operator==(const Interval&) const = default;
};

// Bounded open interval (lo, hi) of the complement.
struct Gap {
  Rational lo;
  Rational hi;

  Rational length() const { return hi - lo; }
  bool operator==(const Gap&) const = default;
};

class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(const Interval& single);

  // Sorts and merges overlapping or touching intervals. Requires lo <= hi.
  static IntervalUnion from_intervals(std::vector<Interval> intervals);
  // ends holds lo0, hi0, lo1, hi1, ... as numerators over den.
  static IntervalUnion from_scaled(Integer den, std::vector<Integer> ends);
  // Same, normalizing in machine integers; |values| must stay below 2^62.
  static IntervalUnion from_scaled(std::int64_t den, std::vector<std::int64_t> ends);

  std::size_t size() const { return ends_.size() / 2; }
  bool empty() const { return ends_.empty(); }

  Interval interval(std::size_t i) const;
  std::vector<Interval> intervals() const;
  Interval hull() const;
  Rational lo(std::size_t i) const { return make_rational(ends_[2 * i], den_); }
  Rational hi(std::size_t i) const { return make_rational(ends_[2 * i + 1], den_); }

  const Integer& denominator() const { return den_; }
  std::span<const Integer> scaled_ends() const { return ends_; }

  bool contains(const Rational& x) const;
  Rational measure() const;

  bool operator==(const IntervalUnion& other) const;

 private:
  IntervalUnion(Integer den, std::vector<Integer> ends);
  void normalize(bool assume_sorted);

  Integer den_ = 1;
  std::vector<Integer> ends_;
};

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion clip(const IntervalUnion& u, const Interval& window);

// Canonical text: one "num/den num/den" line per interval, ascending.
std::string to_text(const IntervalUnion& u);
IntervalUnion parse_interval_union(std::string_view text);

}  // namespace cantor

#include "cantor/interval_union.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "cantor/errors.hpp"

namespace cantor {

IntervalUnion::IntervalUnion(Integer den, std::vector<Integer> ends) : den_(std::move(den)), ends_(std::move(ends)) {}

IntervalUnion::IntervalUnion(const Interval& single) {
  *this = from_intervals({single});
}

IntervalUnion IntervalUnion::from_intervals(std::vector<Interval> intervals) {
  Integer den = 1;
  for (const auto& iv : intervals) {
    if (iv.hi < iv.lo) throw DomainError("interval with hi < lo");
    den = lcm(den, denominator_of(iv.lo));
    den = lcm(den, denominator_of(iv.hi));
  }
  std::vector<Integer> ends;
  ends.reserve(intervals.size() * 2);
  for (const auto& iv : intervals) {
    ends.push_back(numerator_of(iv.lo) * (den / denominator_of(iv.lo)));
    ends.push_back(numerator_of(iv.hi) * (den / denominator_of(iv.hi)));
  }
  IntervalUnion u(std::move(den), std::move(ends));
  u.normalize(false);
  return u;
}

IntervalUnion IntervalUnion::from_scaled(Integer den, std::vector<Integer> ends) {
  if (den == 0) throw DomainError("zero denominator");
  if (ends.size() % 2 != 0) throw DomainError("scaled endpoints must come in pairs");
  if (den < 0) {
    den = -den;
    for (auto& e : ends) e = -e;
    for (std::size_t i = 0; i < ends.size(); i += 2) std::swap(ends[i], ends[i + 1]);
  }
  for (std::size_t i = 0; i < ends.size(); i += 2) {
    if (ends[i + 1] < ends[i]) throw DomainError("interval with hi < lo");
  }
  IntervalUnion u(std::move(den), std::move(ends));
  u.normalize(false);
  return u;
}

void detail::merge_scaled(std::vector<std::int64_t>& ends) {
  if (ends.size() % 2 != 0) throw DomainError("scaled endpoints must come in pairs");
  const std::size_t n = ends.size() / 2;
  bool sorted = true;
  for (std::size_t i = 0; i < n; ++i) {
    if (ends[2 * i + 1] < ends[2 * i]) throw DomainError("interval with hi < lo");
    if (i > 0 && ends[2 * i] < ends[2 * (i - 1)]) sorted = false;
  }
  if (!sorted) {
    std::vector<std::pair<std::int64_t, std::int64_t>> pairs(n);
    for (std::size_t i = 0; i < n; ++i) pairs[i] = {ends[2 * i], ends[2 * i + 1]};
    std::sort(pairs.begin(), pairs.end());
    for (std::size_t i = 0; i < n; ++i) {
      ends[2 * i] = pairs[i].first;
      ends[2 * i + 1] = pairs[i].second;
    }
  }
  std::size_t out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (out > 0 && ends[2 * i] <= ends[out - 1]) {
      ends[out - 1] = std::max(ends[out - 1], ends[2 * i + 1]);
      continue;
    }
    ends[out] = ends[2 * i];
    ends[out + 1] = ends[2 * i + 1];
    out += 2;
  }
  ends.resize(out);
}

IntervalUnion IntervalUnion::from_scaled(std::int64_t den, std::vector<std::int64_t> ends) {
  if (den <= 0) return from_scaled(Integer(den), std::vector<Integer>(ends.begin(), ends.end()));
  detail::merge_scaled(ends);
  std::int64_t g = den;
  for (auto e : ends) {
    if (g == 1) break;
    g = std::gcd(g, e);
  }
  if (ends.empty()) g = den;
  std::vector<Integer> big;
  big.reserve(ends.size());
  for (auto e : ends) big.emplace_back(e / g);
  return IntervalUnion(Integer(den / g), std::move(big));
}

void IntervalUnion::normalize(bool assume_sorted) {
  const std::size_t n = ends_.size() / 2;
  bool sorted = assume_sorted;
  if (!sorted) {
    sorted = true;
    for (std::size_t i = 1; i < n && sorted; ++i) sorted = ends_[2 * (i - 1)] <= ends_[2 * i];
  }
  if (!sorted) {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [this](std::size_t a, std::size_t b) {
      if (ends_[2 * a] != ends_[2 * b]) return ends_[2 * a] < ends_[2 * b];
      return ends_[2 * a + 1] < ends_[2 * b + 1];
    });
    std::vector<Integer> reordered;
    reordered.reserve(ends_.size());
    for (std::size_t i : order) {
      reordered.push_back(std::move(ends_[2 * i]));
      reordered.push_back(std::move(ends_[2 * i + 1]));
    }
    ends_ = std::move(reordered);
  }
  // merge overlapping and touching neighbours
  std::size_t out = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (out > 0 && ends_[2 * i] <= ends_[out - 1]) {
      if (ends_[2 * i + 1] > ends_[out - 1]) ends_[out - 1] = std::move(ends_[2 * i + 1]);
      continue;
    }
    if (out != 2 * i) {
      ends_[out] = std::move(ends_[2 * i]);
      ends_[out + 1] = std::move(ends_[2 * i + 1]);
    }
    out += 2;
  }
  ends_.resize(out);
  // lowest common denominator
  if (ends_.empty()) {
    den_ = 1;
    return;
  }
  Integer g = den_;
  for (const auto& e : ends_) {
    if (g == 1) break;
    g = gcd(g, e);
  }
  if (g > 1) {
    den_ /= g;
    for (auto& e : ends_) e /= g;
  }
}

Interval IntervalUnion::interval(std::size_t i) const { return {lo(i), hi(i)}; }

std::vector<Interval> IntervalUnion::intervals() const {
  std::vector<Interval> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(interval(i));
  return out;
}

Interval IntervalUnion::hull() const {
  if (empty()) throw DomainError("hull of an empty union");
  return {make_rational(ends_.front(), den_), make_rational(ends_.back(), den_)};
}

bool IntervalUnion::contains(const Rational& x) const {
  // x * den compared against numerators
  Rational scaled = x * den_;
  std::size_t lo_idx = 0, hi_idx = size();
  while (lo_idx < hi_idx) {
    std::size_t mid = (lo_idx + hi_idx) / 2;
    if (Rational(ends_[2 * mid + 1]) < scaled) {
      lo_idx = mid + 1;
    } else {
      hi_idx = mid;
    }
  }
  return lo_idx < size() && Rational(ends_[2 * lo_idx]) <= scaled;
}

Rational IntervalUnion::measure() const {
  Integer total = 0;
  for (std::size_t i = 0; i < size(); ++i) total += ends_[2 * i + 1] - ends_[2 * i];
  return make_rational(total, den_);
}

bool IntervalUnion::operator==(const IntervalUnion& other) const {
  return den_ == other.den_ && ends_ == other.ends_;
}

IntervalUnion intersect(const IntervalUnion& a, const IntervalUnion& b) {
  if (a.empty() || b.empty()) return {};
  const Integer den = lcm(a.denominator(), b.denominator());
  const Integer fa = den / a.denominator();
  const Integer fb = den / b.denominator();
  auto ea = a.scaled_ends();
  auto eb = b.scaled_ends();
  std::vector<Integer> out;
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    Integer alo = ea[2 * i] * fa, ahi = ea[2 * i + 1] * fa;
    Integer blo = eb[2 * j] * fb, bhi = eb[2 * j + 1] * fb;
    const Integer& lo = alo > blo ? alo : blo;
    const Integer& hi = ahi < bhi ? ahi : bhi;
    if (lo <= hi) {
      out.push_back(lo);
      out.push_back(hi);
    }
    if (ahi < bhi) {
      ++i;
    } else {
      ++j;
    }
  }
  return IntervalUnion::from_scaled(den, std::move(out));
}

IntervalUnion clip(const IntervalUnion& u, const Interval& window) {
  return intersect(u, IntervalUnion(window));
}

std::string to_text(const IntervalUnion& u) {
  std::ostringstream out;
  for (std::size_t i = 0; i < u.size(); ++i) {
    out << to_fraction_string(u.lo(i)) << ' ' << to_fraction_string(u.hi(i)) << '\n';
  }
  return out.str();
}

IntervalUnion parse_interval_union(std::string_view text) {
  std::vector<Interval> intervals;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::istringstream fields(line);
    std::string lo, hi, extra;
    if (!(fields >> lo >> hi) || (fields >> extra)) throw DomainError("malformed interval line '" + line + "'");
    intervals.push_back({parse_rational(lo), parse_rational(hi)});
  }
  return IntervalUnion::from_intervals(std::move(intervals));
}

}  // namespace cantor

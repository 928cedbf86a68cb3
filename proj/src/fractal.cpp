#include "cantor/fractal.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <utility>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

// Word counts above this would not fit in memory as explicit interval lists.
constexpr double kMaxIntervals = 5e7;

}  // namespace

MissingDigitSet::MissingDigitSet(int base, std::vector<int> allowed, AffineMap frame)
    : base_(base), frame_(std::move(frame)) {
  if (base < 3) throw DomainError("missing-digit sets need base >= 3");
  std::sort(allowed.begin(), allowed.end());
  allowed.erase(std::unique(allowed.begin(), allowed.end()), allowed.end());
  if (allowed.size() < 2) throw DomainError("a missing-digit Cantor set needs at least two digits");
  if (allowed.front() < 0 || allowed.back() >= base) throw DomainError("digit outside {0,...,base-1}");
  if (frame_.scale == 0) throw DomainError("affine frame with zero scale");
  allowed_ = std::move(allowed);
}

bool MissingDigitSet::is_contiguous() const {
  return allowed_.back() - allowed_.front() + 1 == static_cast<int>(allowed_.size());
}

Interval MissingDigitSet::hull() const {
  Rational a = make_rational(allowed_.front(), base_ - 1);
  Rational b = make_rational(allowed_.back(), base_ - 1);
  Rational fa = frame_.apply(a), fb = frame_.apply(b);
  if (fb < fa) std::swap(fa, fb);
  return {fa, fb};
}

Rational MissingDigitSet::largest_gap() const {
  // top-level gaps are the largest; deeper ones are copies scaled by 1/b
  const Rational spread = make_rational(allowed_.back() - allowed_.front(), Integer(base_) * (base_ - 1));
  Rational best = 0;
  for (std::size_t i = 1; i < allowed_.size(); ++i) {
    Rational g = make_rational(allowed_[i] - allowed_[i - 1], base_) - spread;
    if (g > best) best = g;
  }
  return best * boost::multiprecision::abs(frame_.scale);
}

std::optional<Rational> MissingDigitSet::closed_form_normalized_thickness() const {
  if (!is_contiguous()) return std::nullopt;
  const int l = allowed_.back() - allowed_.front();
  if (l >= base_ - 1) return std::nullopt;  // the whole interval, no gaps
  return make_rational(l, base_ - 1);
}

namespace {

// Cylinder endpoints in word order, already framed as scale_term * x + shift_term.
template <typename T>
std::vector<T> cylinder_ends(int b, const std::vector<int>& digits, int depth, std::size_t words, bool identity,
                             const T& scale_term, const T& shift_term, bool reversed) {
  const std::size_t k = digits.size();
  const auto d = static_cast<std::size_t>(depth);
  std::vector<T> ends;
  ends.reserve(2 * words);
  // odometer over words, most significant digit first; partial[i] is the
  // value of the first i digits scaled to b^(depth - i)
  std::vector<std::size_t> idx(d, 0);
  std::vector<T> place(d + 1);
  place[d] = 1;
  for (std::size_t i = d; i-- > 0;) place[i] = place[i + 1] * b;
  std::vector<T> partial(d + 1, T(0));
  for (std::size_t i = 0; i < d; ++i) partial[i + 1] = partial[i] + digits[0] * place[i + 1];
  const int lo_digit = digits.front(), hi_digit = digits.back();
  while (true) {
    const T base_value = partial[d] * (b - 1);
    T lo = base_value + lo_digit;
    T hi = base_value + hi_digit;
    if (!identity) {
      lo = scale_term * lo + shift_term;
      hi = scale_term * hi + shift_term;
      if (reversed) std::swap(lo, hi);
    }
    ends.push_back(std::move(lo));
    ends.push_back(std::move(hi));
    std::size_t pos = d;
    while (pos > 0 && idx[pos - 1] + 1 == k) --pos;
    if (pos == 0) break;
    --pos;
    ++idx[pos];
    for (std::size_t i = pos; i < d; ++i) {
      if (i > pos) idx[i] = 0;
      partial[i + 1] = partial[i] + digits[idx[i]] * place[i + 1];
    }
  }
  if (reversed) {
    // reverse interval order so endpoints stay ascending
    const std::size_t n = ends.size() / 2;
    for (std::size_t i = 0; i < n / 2; ++i) {
      std::swap(ends[2 * i], ends[2 * (n - 1 - i)]);
      std::swap(ends[2 * i + 1], ends[2 * (n - 1 - i) + 1]);
    }
  }
  return ends;
}

const Integer kMachineLimit = Integer(1) << 62;

bool fits_machine(const Integer& x) { return abs(x) < kMachineLimit; }

}  // namespace

namespace {

struct CylinderPlan {
  int b;
  std::size_t words;
  Integer den, scale_term, shift_term;
  bool identity, reversed, machine;
};

CylinderPlan plan_cylinders(const MissingDigitSet& set, int depth) {
  if (depth < 0) throw DomainError("approximation depth must be nonnegative");
  const std::size_t k = set.allowed().size();
  if (std::pow(static_cast<double>(k), depth) > kMaxIntervals) {
    throw CapacityError("approx: " + std::to_string(k) + "^" + std::to_string(depth) + " cylinders exceed the cap");
  }
  CylinderPlan plan;
  plan.b = set.base();
  plan.words = static_cast<std::size_t>(std::pow(static_cast<double>(k), depth) + 0.5);
  // unframed cylinder for word w: [(b-1) X_w + min B, (b-1) X_w + max B] / ((b-1) b^depth)
  const Integer den0 = ipow(Integer(plan.b), static_cast<unsigned>(depth)) * (plan.b - 1);
  const auto& frame = set.frame();
  const Integer rn = numerator_of(frame.scale), rd = denominator_of(frame.scale);
  const Integer tn = numerator_of(frame.shift), td = denominator_of(frame.shift);
  plan.identity = frame.scale == 1 && frame.shift == 0;
  plan.shift_term = tn * den0 * rd;
  plan.scale_term = rn * td;
  plan.den = plan.identity ? den0 : Integer(den0 * rd * td);
  plan.reversed = rn < 0;
  // every unframed endpoint lies in [0, den0], so this bounds all framed values
  const Integer bound = abs(plan.scale_term) * den0 + abs(plan.shift_term);
  plan.machine = fits_machine(bound) && fits_machine(plan.den);
  return plan;
}

std::vector<std::int64_t> machine_cylinders(const MissingDigitSet& set, int depth, const CylinderPlan& plan) {
  auto ends = cylinder_ends<std::int64_t>(plan.b, set.allowed(), depth, plan.words, plan.identity,
                                          static_cast<std::int64_t>(plan.scale_term),
                                          static_cast<std::int64_t>(plan.shift_term), plan.reversed);
  detail::merge_scaled(ends);
  return ends;
}

}  // namespace

IntervalUnion approx(const MissingDigitSet& set, int depth) {
  const CylinderPlan plan = plan_cylinders(set, depth);
  if (plan.machine) {
    return IntervalUnion::from_scaled(static_cast<std::int64_t>(plan.den), machine_cylinders(set, depth, plan));
  }
  auto ends = cylinder_ends<Integer>(plan.b, set.allowed(), depth, plan.words, plan.identity, plan.scale_term,
                                     plan.shift_term, plan.reversed);
  return IntervalUnion::from_scaled(plan.den, std::move(ends));
}

std::vector<Gap> gaps(const IntervalUnion& u) {
  if (u.empty()) throw DomainError("gaps of an empty union");
  std::vector<Gap> out;
  out.reserve(u.size() - 1);
  for (std::size_t i = 0; i + 1 < u.size(); ++i) out.push_back({u.hi(i), u.lo(i + 1)});
  return out;
}

Rational largest_gap(const IntervalUnion& u) {
  if (u.empty()) throw DomainError("largest gap of an empty union");
  auto e = u.scaled_ends();
  Integer best = 0;
  for (std::size_t i = 0; i + 1 < u.size(); ++i) {
    Integer len = e[2 * i + 2] - e[2 * i + 1];
    if (len > best) best = len;
  }
  return make_rational(best, u.denominator());
}

namespace {

// Returns the index of the gap attaining the minimum bridge/gap ratio and that
// minimal bridge length. Products are formed in Wide.
template <typename T, typename Wide>
std::pair<std::size_t, T> thickness_core(const std::vector<T>& e, std::size_t m) {
  std::vector<T> len(m);
  for (std::size_t j = 0; j < m; ++j) len[j] = e[2 * j + 2] - e[2 * j + 1];

  // nearest gap on each side at least as long; the hull ends act as the
  // unbounded gaps and always qualify
  std::vector<T> bridge(m);
  std::vector<std::size_t> stack;
  stack.reserve(m);
  for (std::size_t j = 0; j < m; ++j) {
    while (!stack.empty() && len[stack.back()] < len[j]) stack.pop_back();
    const T& left_end = stack.empty() ? e[0] : e[2 * stack.back() + 2];
    bridge[j] = e[2 * j + 1] - left_end;
    stack.push_back(j);
  }
  stack.clear();
  for (std::size_t j = m; j-- > 0;) {
    while (!stack.empty() && len[stack.back()] < len[j]) stack.pop_back();
    const T& right_end = stack.empty() ? e[2 * m + 1] : e[2 * stack.back() + 1];
    T right = right_end - e[2 * j + 2];
    if (right < bridge[j]) bridge[j] = std::move(right);
    stack.push_back(j);
  }

  std::size_t best = 0;
  for (std::size_t j = 1; j < m; ++j) {
    // bridge[j] / len[j] < bridge[best] / len[best]
    if (Wide(bridge[j]) * Wide(len[best]) < Wide(bridge[best]) * Wide(len[j])) best = j;
  }
  return {best, bridge[best]};
}

}  // namespace

ThicknessReport thickness(const IntervalUnion& u, std::optional<int> depth, Exactness exactness) {
  if (u.size() < 2) throw DomainError("thickness needs at least two intervals (one bounded gap)");
  auto e = u.scaled_ends();
  const std::size_t m = u.size() - 1;  // bounded gaps; gap j = (e[2j+1], e[2j+2])
  std::size_t best;
  Integer best_num;
  if (fits_machine(e.front()) && fits_machine(e.back())) {
    std::vector<std::int64_t> small(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) small[i] = static_cast<std::int64_t>(e[i]);
    auto [j, num] = thickness_core<std::int64_t, __int128>(small, m);
    best = j;
    best_num = num;
  } else {
    std::vector<Integer> big(e.begin(), e.end());
    auto [j, num] = thickness_core<Integer, Integer>(big, m);
    best = j;
    best_num = std::move(num);
  }
  ThicknessReport report;
  report.C = make_rational(best_num, u.scaled_ends()[2 * best + 2] - u.scaled_ends()[2 * best + 1]);
  report.S = report.C / (report.C + 1);
  report.witness_gap = {u.hi(best), u.lo(best + 1)};
  report.depth = depth;
  report.exactness = exactness;
  return report;
}

ThicknessReport thickness(const MissingDigitSet& set, int depth) {
  const Exactness exactness = set.is_contiguous() && depth >= 2 ? Exactness::exact : Exactness::estimate;
  const CylinderPlan plan = plan_cylinders(set, depth);
  if (!plan.machine) return thickness(approx(set, depth), depth, exactness);
  // same computation as on the union, without materializing big integers
  const auto e = machine_cylinders(set, depth, plan);
  if (e.size() < 4) throw DomainError("thickness needs at least two intervals (one bounded gap)");
  const auto [best, num] = thickness_core<std::int64_t, __int128>(e, e.size() / 2 - 1);
  ThicknessReport report;
  report.C = make_rational(Integer(num), Integer(e[2 * best + 2] - e[2 * best + 1]));
  report.S = report.C / (report.C + 1);
  report.witness_gap = {make_rational(Integer(e[2 * best + 1]), plan.den),
                        make_rational(Integer(e[2 * best + 2]), plan.den)};
  report.depth = depth;
  report.exactness = exactness;
  return report;
}

IntervalUnion affine_image(const IntervalUnion& u, const Rational& scale, const Rational& shift) {
  if (scale == 0) throw DomainError("affine_image requires a nonzero scale");
  const Integer rn = numerator_of(scale), rd = denominator_of(scale);
  const Integer tn = numerator_of(shift), td = denominator_of(shift);
  const Integer& den = u.denominator();
  const Integer scale_term = rn * td;
  const Integer shift_term = tn * den * rd;
  auto e = u.scaled_ends();
  const std::size_t n = u.size();
  std::vector<Integer> out(e.size());
  for (std::size_t i = 0; i < n; ++i) {
    Integer lo = scale_term * e[2 * i] + shift_term;
    Integer hi = scale_term * e[2 * i + 1] + shift_term;
    if (rn < 0) {
      out[2 * (n - 1 - i)] = std::move(hi);
      out[2 * (n - 1 - i) + 1] = std::move(lo);
    } else {
      out[2 * i] = std::move(lo);
      out[2 * i + 1] = std::move(hi);
    }
  }
  return IntervalUnion::from_scaled(den * rd * td, std::move(out));
}

IntervalUnion power_image(const IntervalUnion& u, int k) {
  if (k < 2) throw DomainError("power_image requires an integer exponent k >= 2");
  auto e = u.scaled_ends();
  if (!u.empty() && e.front() < 0) throw DomainError("power_image requires nonnegative endpoints");
  std::vector<Integer> out;
  out.reserve(e.size());
  for (const auto& x : e) out.push_back(ipow(x, static_cast<unsigned>(k)));
  return IntervalUnion::from_scaled(ipow(u.denominator(), static_cast<unsigned>(k)), std::move(out));
}

KPowerBounds kpower_bounds(int k) {
  if (k < 2) throw DomainError("kpower_bounds requires k >= 2");
  const auto uk = static_cast<unsigned>(k);
  const Rational two_k = Rational(ipow(Integer(2), uk));
  const Rational three_halves_k = make_rational(ipow(Integer(3), uk), ipow(Integer(2), uk));
  return {Rational(1) / (two_k - 1), (three_halves_k - 1) / (two_k - three_halves_k), Rational(1) / two_k};
}

IntervalUnion sumset(const IntervalUnion& a, const IntervalUnion& b) {
  if (a.empty() || b.empty()) return {};
  if (static_cast<double>(a.size()) * static_cast<double>(b.size()) > kMaxIntervals) {
    throw CapacityError("sumset: " + std::to_string(a.size()) + " x " + std::to_string(b.size()) +
                        " interval pairs exceed the cap");
  }
  const Integer den = lcm(a.denominator(), b.denominator());
  const Integer fa = den / a.denominator();
  const Integer fb = den / b.denominator();
  std::vector<Integer> ea, eb;
  ea.reserve(a.scaled_ends().size());
  eb.reserve(b.scaled_ends().size());
  for (const auto& x : a.scaled_ends()) ea.push_back(x * fa);
  for (const auto& x : b.scaled_ends()) eb.push_back(x * fb);
  std::vector<Integer> out;
  out.reserve(2 * a.size() * b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) {
      out.push_back(ea[2 * i] + eb[2 * j]);
      out.push_back(ea[2 * i + 1] + eb[2 * j + 1]);
    }
  }
  return IntervalUnion::from_scaled(den, std::move(out));
}

bool is_interval(const IntervalUnion& u) { return u.size() == 1; }

}  // namespace cantor

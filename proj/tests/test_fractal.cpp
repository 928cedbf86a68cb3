#include <doctest.h>

#include <random>

#include "cantor/errors.hpp"
#include "cantor/fractal.hpp"

using namespace cantor;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

IntervalUnion U(std::vector<Interval> v) { return IntervalUnion::from_intervals(std::move(v)); }

// Thickness by the definition: for each bounded gap scan outward for the
// first gap at least as long, quadratic and independent of the stack version.
Rational naive_C(const IntervalUnion& u) {
  const auto iv = u.intervals();
  const std::size_t m = iv.size() - 1;
  std::optional<Rational> best;
  for (std::size_t j = 0; j < m; ++j) {
    const Rational len = iv[j + 1].lo - iv[j].hi;
    Rational left = iv[0].lo, right = iv.back().hi;
    for (std::size_t i = j; i-- > 0;) {
      if (iv[i + 1].lo - iv[i].hi >= len) {
        left = iv[i + 1].lo;
        break;
      }
    }
    for (std::size_t i = j + 1; i < m; ++i) {
      if (iv[i + 1].lo - iv[i].hi >= len) {
        right = iv[i].hi;
        break;
      }
    }
    Rational c = std::min<Rational>(iv[j].hi - left, right - iv[j + 1].lo) / len;
    if (!best || c < *best) best = c;
  }
  return *best;
}

// Cylinder hulls computed the slow way: each word's left end plus the hull of
// the attractor scaled by b^-d.
IntervalUnion naive_approx(int b, const std::vector<int>& digits, int d) {
  std::vector<Interval> out;
  const Rational lo_h = q(digits.front(), b - 1), hi_h = q(digits.back(), b - 1);
  std::vector<Rational> starts{0};
  Rational scale = 1;
  for (int level = 0; level < d; ++level) {
    scale /= b;
    std::vector<Rational> next;
    for (const auto& s : starts)
      for (int dg : digits) next.push_back(s + dg * scale);
    starts = std::move(next);
  }
  for (const auto& s : starts) out.push_back({s + lo_h * scale, s + hi_h * scale});
  return U(out);
}

std::vector<int> range(int lo, int hi) {
  std::vector<int> v;
  for (int i = lo; i <= hi; ++i) v.push_back(i);
  return v;
}

}  // namespace

TEST_CASE("interval union normalization") {
  auto u = U({{q(2), q(3)}, {q(0), q(1)}, {q(1), q(3, 2)}});
  REQUIRE(u.size() == 2);
  CHECK(u.interval(0) == Interval{q(0), q(3, 2)});
  CHECK(u.interval(1) == Interval{q(2), q(3)});
  CHECK(u.measure() == q(5, 2));
  CHECK(u.contains(q(3, 2)));
  CHECK_FALSE(u.contains(q(7, 4)));
  CHECK(u.hull() == Interval{q(0), q(3)});
  CHECK_THROWS_AS(U({{q(1), q(0)}}), DomainError);
  CHECK(parse_interval_union(to_text(u)) == u);
  auto w = intersect(u, U({{q(1), q(5, 2)}}));
  CHECK(w == U({{q(1), q(3, 2)}, {q(2), q(5, 2)}}));
  CHECK(clip(u, {q(-1), q(1, 2)}) == U({{q(0), q(1, 2)}}));
  // machine-integer and big-integer factories agree
  std::vector<std::int64_t> small{6, 9, 0, 2, 2, 3, 12, 15};
  std::vector<Integer> big(small.begin(), small.end());
  CHECK(IntervalUnion::from_scaled(std::int64_t{6}, small) == IntervalUnion::from_scaled(Integer(6), big));
}

TEST_CASE("approx examples") {
  MissingDigitSet a3(3, {0, 1});
  CHECK(approx(a3, 0) == U({{q(0), q(1, 2)}}));
  CHECK(approx(a3, 1) == U({{q(0), q(1, 6)}, {q(1, 3), q(1, 2)}}));
  CHECK(approx(MissingDigitSet(3, {0, 2}), 1) == U({{q(0), q(1, 3)}, {q(2, 3), q(1)}}));
  CHECK_THROWS_AS(MissingDigitSet(2, {0, 1}), DomainError);
  CHECK_THROWS_AS(MissingDigitSet(3, {1}), DomainError);
  CHECK_THROWS_AS(MissingDigitSet(3, {0, 3}), DomainError);
  CHECK_THROWS_AS(approx(MissingDigitSet(3, {0, 1, 2}), 40), CapacityError);
}

TEST_CASE("approx agrees with the direct cylinder construction") {
  for (int b = 3; b <= 7; ++b) {
    for (auto digits : std::vector<std::vector<int>>{{0, 1}, {0, b - 1}, {1, 2}, range(1, b - 1)}) {
      for (int d = 0; d <= 4; ++d) REQUIRE(approx(MissingDigitSet(b, digits), d) == naive_approx(b, digits, d));
    }
  }
  // non-contiguous and framed
  AffineMap frame{q(-3, 7), q(2, 5)};
  auto set = MissingDigitSet(5, {0, 2, 4}, frame);
  CHECK(approx(set, 3) == affine_image(naive_approx(5, {0, 2, 4}, 3), frame.scale, frame.shift));
}

TEST_CASE("gaps examples") {
  CHECK(gaps(U({{q(0), q(1, 6)}, {q(1, 3), q(1, 2)}})) == std::vector<Gap>{{q(1, 6), q(1, 3)}});
  CHECK(gaps(U({{q(0), q(1)}})).empty());
  CHECK(gaps(U({{q(0), q(1)}, {q(2), q(3)}, {q(5), q(6)}})) == std::vector<Gap>{{q(1), q(2)}, {q(3), q(5)}});
  CHECK_THROWS_AS(gaps(IntervalUnion()), DomainError);
  CHECK(largest_gap(U({{q(0), q(1)}, {q(2), q(3)}, {q(5), q(6)}})) == 2);
}

TEST_CASE("thickness examples") {
  auto r = thickness(approx(MissingDigitSet(3, {0, 1}), 2));
  CHECK(r.C == 1);
  CHECK(r.S == q(1, 2));
  CHECK(thickness(MissingDigitSet(5, {0, 1}), 2).S == q(1, 4));
  CHECK(thickness(MissingDigitSet(5, {0, 1, 2}), 2).S == q(1, 2));
  CHECK(thickness(MissingDigitSet(5, {1, 2, 3, 4}), 2).S == q(3, 4));
  CHECK(thickness(MissingDigitSet(5, {1, 2, 3, 4}), 2).exactness == Exactness::exact);
  CHECK(thickness(MissingDigitSet(5, {0, 2, 4}), 2).exactness == Exactness::estimate);
  CHECK(thickness(MissingDigitSet(5, {0, 1}), 1).exactness == Exactness::estimate);
  CHECK_THROWS_AS(thickness(U({{q(0), q(1)}})), DomainError);
}

TEST_CASE("thickness against the definition") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Interval> iv;
    long x = 0;
    const int n = 2 + static_cast<int>(rng() % 12);
    for (int i = 0; i < n; ++i) {
      long len = static_cast<long>(rng() % 9);
      iv.push_back({q(x), q(x + len)});
      x += len + 1 + static_cast<long>(rng() % 6);
    }
    auto u = U(iv);
    if (u.size() < 2) continue;
    REQUIRE(thickness(u).C == naive_C(u));
  }
  for (int b = 3; b <= 6; ++b) {
    auto u = approx(MissingDigitSet(b, {0, 2}), 3);
    CHECK(thickness(u).C == naive_C(u));
  }
}

TEST_CASE("closed form and stabilization") {
  for (int b = 3; b <= 12; ++b) {
    for (int l = 1; l <= b - 2; ++l) {
      MissingDigitSet s(b, range(0, l));
      REQUIRE(s.closed_form_normalized_thickness() == q(l, b - 1));
      for (int d = 2; d <= 4; ++d) REQUIRE(thickness(s, d).S == q(l, b - 1));
    }
    MissingDigitSet s(b, range(1, b - 1));
    for (int d = 2; d <= 4; ++d) REQUIRE(thickness(s, d).S == q(b - 2, b - 1));
  }
}

TEST_CASE("hull exactness") {
  for (int b = 3; b <= 8; ++b) {
    for (int lo = 0; lo < b - 1; ++lo) {
      for (int hi = lo + 1; hi < b; ++hi) {
        AffineMap frame{q(b % 2 ? -2 : 3, 5), q(1, b)};
        MissingDigitSet s(b, range(lo, hi), frame);
        Rational a = frame.apply(q(lo, b - 1)), c = frame.apply(q(hi, b - 1));
        Interval expected{std::min(a, c), std::max(a, c)};
        REQUIRE(s.hull() == expected);
        for (int d = 0; d <= 3; ++d) REQUIRE(approx(s, d).hull() == expected);
      }
    }
  }
}

TEST_CASE("largest gap of the attractor") {
  for (int b = 3; b <= 9; ++b) {
    for (int l = 1; l <= b - 2; ++l) {
      MissingDigitSet s(b, range(0, l));
      CHECK(s.largest_gap() == q(b - 1 - l, b * (b - 1)));
      CHECK(largest_gap(approx(s, 3)) == s.largest_gap());
    }
  }
}

TEST_CASE("truncated set keeps its thickness") {
  // A_b^{1..b-1} cut at (b-k)/b; the cut falls on a level-one gap
  for (int b = 4; b <= 9; ++b) {
    MissingDigitSet s(b, range(1, b - 1));
    for (int k = 1; k <= b - 3; ++k) {
      auto cut = clip(approx(s, 4), {q(0), q(b - k, b)});
      CHECK(thickness(cut).S == q(b - 2, b - 1));
    }
  }
}

TEST_CASE("affine invariance of S") {
  std::mt19937_64 rng(3);
  auto u = approx(MissingDigitSet(7, {0, 1, 3, 4}), 3);
  const Rational S = thickness(u).S;
  for (int i = 0; i < 20; ++i) {
    Rational r = q(1 + static_cast<long>(rng() % 50), 1 + static_cast<long>(rng() % 50));
    Rational t = q(static_cast<long>(rng() % 200) - 100, 1 + static_cast<long>(rng() % 30));
    REQUIRE(thickness(affine_image(u, r, t)).S == S);
    REQUIRE(thickness(affine_image(u, -r, t)).S == S);
  }
  CHECK(affine_image(u, 1, 0) == u);
  CHECK(affine_image(U({{q(0), q(1)}}), -1, 0) == U({{q(-1), q(0)}}));
  CHECK_THROWS_AS(affine_image(u, 0, 1), DomainError);
}

TEST_CASE("gaps refine monotonically") {
  for (auto [b, digits] : std::vector<std::pair<int, std::vector<int>>>{{3, {0, 1}}, {5, {0, 2, 4}}, {7, {1, 2, 5}}}) {
    MissingDigitSet s(b, digits);
    for (int d = 0; d < 4; ++d) {
      auto coarse = gaps(approx(s, d)), fine = gaps(approx(s, d + 1));
      for (const auto& g : coarse) REQUIRE(std::find(fine.begin(), fine.end(), g) != fine.end());
    }
  }
}

TEST_CASE("power image") {
  CHECK(power_image(U({{q(0), q(1)}}), 2) == U({{q(0), q(1)}}));
  CHECK(power_image(U({{q(1, 3), q(2, 3)}}), 2) == U({{q(1, 9), q(4, 9)}}));
  CHECK_THROWS_AS(power_image(U({{q(-1), q(1)}}), 2), DomainError);
  CHECK_THROWS_AS(power_image(U({{q(0), q(1)}}), 1), DomainError);
  auto c3 = approx(MissingDigitSet(3, {0, 2}), 8);
  for (int k : {2, 3}) {
    auto S = thickness(power_image(c3, k)).S;
    CHECK(S >= q(1, 1 << k));
    CHECK(to_double(S) <= 1.0 / (1 << k) + 0.02);
  }
}

TEST_CASE("k-th power bounds") {
  auto b2 = kpower_bounds(2);
  CHECK(b2.C_lower == q(1, 3));
  CHECK(b2.c_k == q(5, 7));
  CHECK(b2.S_exact == q(1, 4));
  auto b3 = kpower_bounds(3);
  CHECK(b3.C_lower == q(1, 7));
  CHECK(b3.S_exact == q(1, 8));
  for (int k = 2; k <= 10; ++k) {
    auto b = kpower_bounds(k);
    CHECK(b.C_lower <= b.c_k);
    CHECK(b.S_exact == b.C_lower / (b.C_lower + 1));
  }
  CHECK_THROWS_AS(kpower_bounds(1), DomainError);
}

TEST_CASE("sumset") {
  CHECK(sumset(U({{q(0), q(1)}}), U({{q(0), q(1)}})) == U({{q(0), q(2)}}));
  CHECK(sumset(U({{q(0), q(1)}}), U({{q(3), q(4)}})) == U({{q(3), q(5)}}));
  CHECK(is_interval(U({{q(0), q(2)}})));
  CHECK_FALSE(is_interval(IntervalUnion()));
  CHECK_FALSE(is_interval(U({{q(0), q(1)}, {q(2), q(3)}})));
  for (int d = 2; d <= 4; ++d) {
    auto a = approx(MissingDigitSet(3, {0, 1}), d);
    auto b = affine_image(approx(MissingDigitSet(5, {0, 1, 2}), d), -1, 0);
    CHECK(is_interval(sumset(a, b)));
  }
  // pairwise sums against a brute-force membership check
  auto a = approx(MissingDigitSet(4, {0, 3}), 2), b = approx(MissingDigitSet(5, {0, 4}), 1);
  auto s = sumset(a, b);
  for (long i = 0; i <= 400; ++i) {
    Rational x = q(i, 200);
    bool expected = false;
    for (const auto& p : a.intervals())
      for (const auto& r : b.intervals()) expected = expected || (p.lo + r.lo <= x && x <= p.hi + r.hi);
    REQUIRE(s.contains(x) == expected);
  }
}

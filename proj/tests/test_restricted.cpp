#include <doctest.h>

#include <random>

#include "cantor/errors.hpp"
#include "cantor/restricted.hpp"

using namespace cantor;

namespace {

std::vector<std::uint64_t> naive(const std::vector<DigitSetSpec>& specs, std::uint64_t N) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t n = 1; n <= N; ++n) {
    bool ok = true;
    for (const auto& s : specs) ok = ok && uses_only(n, s);
    if (ok) out.push_back(n);
  }
  return out;
}

MultiBaseSpec spec357() {
  return MultiBaseSpec({DigitSetSpec::lower_half(3), DigitSetSpec::lower_half(5), DigitSetSpec::lower_half(7)});
}

}  // namespace

TEST_CASE("enumerate examples") {
  CHECK(enumerate(MultiBaseSpec({DigitSetSpec(3, {0, 1})}), 10) == std::vector<std::uint64_t>{1, 3, 4, 9, 10});
  CHECK(enumerate(MultiBaseSpec({DigitSetSpec(3, {0, 1}), DigitSetSpec(5, {0, 1, 2})}), 12) ==
        std::vector<std::uint64_t>{1, 10, 12});
  CHECK(enumerate(MultiBaseSpec({DigitSetSpec::full(3)}), 5) == std::vector<std::uint64_t>{1, 2, 3, 4, 5});
  CHECK(enumerate(MultiBaseSpec({DigitSetSpec(3, {0})}), 100).empty());
}

TEST_CASE("enumerate matches the naive scan") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    const int k = 1 + static_cast<int>(rng() % 3);
    std::vector<DigitSetSpec> specs;
    for (int i = 0; i < k; ++i) {
      int b = 2 + static_cast<int>(rng() % 9);
      while (std::any_of(specs.begin(), specs.end(), [b](const DigitSetSpec& s) { return s.base() == b; })) {
        b = 2 + static_cast<int>(rng() % 9);
      }
      std::vector<int> allowed;
      for (int d = 0; d < b; ++d)
        if (rng() % 3 != 0) allowed.push_back(d);
      if (allowed.empty()) allowed.push_back(static_cast<int>(rng() % b));
      specs.emplace_back(b, allowed);
    }
    const std::uint64_t N = trial < 5 ? 100'000 : 1 + rng() % 20'000;
    INFO("trial " << trial);
    REQUIRE(enumerate(MultiBaseSpec(specs), N) == naive(specs, N));
  }
}

TEST_CASE("enumerate is monotone in N") {
  const auto spec = spec357();
  const auto big = enumerate(spec, 50'000);
  for (std::uint64_t N : {1, 10, 999, 12'345, 49'999}) {
    const auto small = enumerate(spec, N);
    REQUIRE(small.size() <= big.size());
    CHECK(std::equal(small.begin(), small.end(), big.begin()));
  }
}

TEST_CASE("Kummer bridge for the 3,5,7 set") {
  for (std::uint64_t n : enumerate(spec357(), 10'000)) REQUIRE(binom_gcd_oracle(n, 105) == 1);
}

TEST_CASE("generating base is the sparsest") {
  // log 2 / log 3 < log 3 / log 5 < log 4 / log 7
  MultiBaseSpec spec({DigitSetSpec(7, {0, 1, 2, 3}), DigitSetSpec(5, {0, 1, 2}), DigitSetSpec(3, {0, 1})});
  CHECK(spec.generating_index() == 2);
  // equal ratios: the larger base wins
  MultiBaseSpec tie({DigitSetSpec(4, {0, 1}), DigitSetSpec(16, {0, 1, 2, 3})});
  CHECK(tie.generating_index() == 1);
}

TEST_CASE("growth report counts") {
  for (int m = 1; m <= 10; ++m) {
    std::uint64_t N = 1;
    for (int i = 0; i < m; ++i) N *= 3;
    auto r = growth_report(MultiBaseSpec({DigitSetSpec(3, {0, 1})}), N);
    // {0,1} ternary numbers in [1, 3^m] are the 2^m - 1 words below 3^m plus 3^m itself
    CHECK(r.count == (std::uint64_t{1} << m));
  }
  auto r = growth_report(spec357(), 1'000'000);
  CHECK(r.count == naive(spec357().specs(), 1'000'000).size());
  auto full = growth_report(MultiBaseSpec({DigitSetSpec::full(10)}), 100);
  CHECK(full.count == 100);
  REQUIRE(full.empirical_exponent.has_value());
  CHECK(*full.empirical_exponent == doctest::Approx(1.0));
  CHECK(full.s == doctest::Approx(1.0));
  CHECK(r.predicted_exponent == doctest::Approx(std::log(2) / std::log(3) + std::log(3) / std::log(5) +
                                                std::log(4) / std::log(7) - 2));
  CHECK_THROWS_AS(growth_report(spec357(), 1), DomainError);
}

TEST_CASE("window membership") {
  const auto spec = spec357();
  std::uint64_t budget = 1'000'000;
  const auto members = enumerate(spec, 100'000);
  for (std::uint64_t lo : {1, 2, 11, 100, 1000, 5000, 40'000}) {
    for (std::uint64_t width : {1, 3, 50, 2000}) {
      const std::uint64_t hi = lo + width;
      bool expected = std::any_of(members.begin(), members.end(), [&](auto n) { return n >= lo && n < hi; });
      auto got = window_has_member(spec, lo, hi, budget);
      REQUIRE(got.has_value());
      CHECK(*got == expected);
    }
  }
  std::uint64_t tiny = 0;
  CHECK_FALSE(window_has_member(spec, 1'000'000, 100'000'000, tiny).has_value());
}

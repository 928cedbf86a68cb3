#include <doctest.h>

#include <map>
#include <random>

#include "cantor/errors.hpp"
#include "cantor/orbit.hpp"

using namespace cantor;

namespace {

Rational q(long n, long d = 1) { return make_rational(n, d); }

Rational decimal(const char* text) { return parse_rational(text); }

// Agreement with a decimal reference good to 1e-60.
bool encloses(const Enclosure& e, const Rational& ref) {
  const Rational tol = q(1, 1) / ipow(Integer(10), 60);
  return e.lo_rational() <= ref + tol && e.hi_rational() >= ref - tol;
}

std::vector<LogRatio> log_D_alphas(mpfr_prec_t bits = 128) { return {log_ratio(3, 4, bits), log_ratio(3, 5, bits)}; }

// Dependence decided by prime exponent vectors and exact elimination.
bool dependent_by_factoring(const std::vector<std::uint64_t>& bases) {
  std::map<std::uint64_t, std::size_t> primes;
  std::vector<std::map<std::uint64_t, long>> rows;
  for (auto b : bases) {
    std::map<std::uint64_t, long> f;
    for (std::uint64_t p = 2; p * p <= b; ++p)
      while (b % p == 0) ++f[p], b /= p;
    if (b > 1) ++f[b];
    for (auto& [p, e] : f) primes.emplace(p, primes.size());
    rows.push_back(f);
  }
  std::vector<std::vector<Rational>> m(rows.size(), std::vector<Rational>(primes.size(), 0));
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (auto& [p, e] : rows[i]) m[i][primes[p]] = e;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < primes.size() && rank < m.size(); ++c) {
    std::size_t piv = rank;
    while (piv < m.size() && m[piv][c] == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[rank]);
    for (std::size_t r = 0; r < m.size(); ++r) {
      if (r == rank || m[r][c] == 0) continue;
      Rational f = m[r][c] / m[rank][c];
      for (std::size_t k = 0; k < primes.size(); ++k) m[r][k] -= f * m[rank][k];
    }
    ++rank;
  }
  return rank < bases.size();
}

bool relation_holds(const std::vector<std::uint64_t>& bases, const std::vector<long long>& e) {
  Rational prod = 1;
  bool nontrivial = false;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    nontrivial = nontrivial || e[i] != 0;
    Integer p = ipow(Integer(bases[i]), static_cast<unsigned>(e[i] < 0 ? -e[i] : e[i]));
    prod *= e[i] < 0 ? Rational(1) / Rational(p) : Rational(p);
  }
  return nontrivial && prod == 1;
}

}  // namespace

TEST_CASE("log ratio values") {
  auto same = log_ratio(4, 4);
  REQUIRE(same.exact.has_value());
  CHECK(*same.exact == 1);
  auto nine = log_ratio(9, 3);
  REQUIRE(nine.exact.has_value());
  CHECK(*nine.exact == 2);
  CHECK(*log_ratio(8, 32).exact == q(3, 5));
  auto r = log_ratio(3, 4, 128);
  CHECK_FALSE(r.exact.has_value());
  CHECK(r.value.width() <= Rational(1) / Rational(ipow(Integer(2), 128)));
  CHECK(encloses(r.value, decimal("0.7924812503605780907268694719739082543799072038462405302278763272705491")));
  CHECK(encloses(log_ratio(3, 5, 200).value,
                 decimal("0.6826061944859852951345663592710522530246693998731672096600566914937462")));
  CHECK(encloses(log_ratio(3, 7, 160).value,
                 decimal("0.5645750340535796138045501671749085361432279111867925950454092623077523")));
  CHECK_THROWS_AS(log_ratio(1, 3), DomainError);
}

TEST_CASE("log ratios are reciprocal") {
  for (std::uint64_t a = 2; a <= 10; ++a) {
    for (std::uint64_t b = 2; b <= 10; ++b) {
      auto x = log_ratio(a, b), y = log_ratio(b, a);
      REQUIRE(x.value.times_positive(y.value).contains(1));
    }
  }
}

TEST_CASE("primitive roots") {
  CHECK(primitive_root(64).root == 2);
  CHECK(primitive_root(64).exponent == 6);
  CHECK(primitive_root(12).exponent == 1);
  CHECK(primitive_root(3486784401ULL).root == 3);
}

TEST_CASE("independence examples") {
  auto r = multiplicative_independence_check({2, 8});
  CHECK(r.kind == Independence::dependent);
  CHECK(relation_holds({2, 8}, r.witness));
  auto s = multiplicative_independence_check({2, 3});
  CHECK(s.kind == Independence::no_small_relation);
  CHECK(s.exhaustive);
  auto t = multiplicative_independence_check({3, 4, 5});
  CHECK(t.kind == Independence::no_small_relation);
  CHECK(t.bound == 1'000'000);
  CHECK(t.exhaustive);
  for (std::uint64_t b = 2; b <= 10; ++b) {
    for (unsigned m : {2u, 3u}) {
      std::uint64_t p = b * b * (m == 3 ? b : 1);
      auto d = multiplicative_independence_check({b, p});
      REQUIRE(d.kind == Independence::dependent);
      REQUIRE(relation_holds({b, p}, d.witness));
    }
  }
}

TEST_CASE("independence against factorization") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 2 + rng() % 3;
    std::vector<std::uint64_t> bases;
    while (bases.size() < n) {
      std::uint64_t b = 2 + rng() % 40;
      if (std::find(bases.begin(), bases.end(), b) == bases.end()) bases.push_back(b);
    }
    auto rep = multiplicative_independence_check(bases, 1000);
    INFO("trial " << trial);
    REQUIRE((rep.kind == Independence::dependent) == dependent_by_factoring(bases));
    if (rep.kind == Independence::dependent) REQUIRE(relation_holds(bases, rep.witness));
  }
  // 6 = 2 * 3 is a three-term relation
  auto r = multiplicative_independence_check({2, 3, 6});
  CHECK(r.kind == Independence::dependent);
  CHECK(relation_holds({2, 3, 6}, r.witness));
}

TEST_CASE("linear forms") {
  auto a = log_ratio(3, 4), b = log_ratio(3, 5);
  auto v = linear_form(1, -1, a, b);
  CHECK(std::abs(v.approx - 0.109875) < 0.001);
  CHECK(v.certified_non_integer);
  auto w = linear_form(1, -2, a, b);
  CHECK(std::abs(w.approx + 0.572731) < 0.001);
  CHECK(w.certified_non_integer);
  auto z = linear_form(0, 0, a, b);
  CHECK(z.value.is_point());
  CHECK(z.value.contains(0));
  CHECK_FALSE(z.certified_non_integer);
}

TEST_CASE("orbit precision policy") {
  OrbitSearchOptions opt;
  CHECK(orbit_precision(100'000, opt) == 128);
  opt.tolerance = 1e-60;
  CHECK(orbit_precision(100'000, opt) == 256);
  opt.max_bits = 128;
  CHECK_THROWS_AS(orbit_precision(100'000, opt), CapacityError);
}

TEST_CASE("region D orbit hits are certified") {
  auto alphas = log_D_alphas();
  auto result = orbit_search(alphas, region_D_orbit_region(), 20'000);
  REQUIRE_FALSE(result.hits.empty());
  std::vector<Enclosure> fine;
  for (const auto& a : alphas) fine.push_back(log_ratio(a.num_base, a.den_base, 2 * result.bits).value);
  for (const auto& hit : result.hits) {
    // recomputation at doubled precision lands inside the reported box
    auto again = fractional_parts(fine, hit.k);
    REQUIRE(again.has_value());
    for (std::size_t i = 0; i < 2; ++i) {
      REQUIRE(hit.point[i].length() <= hit.error_bound);
      REQUIRE(hit.point[i].contains((*again)[i].lo_rational()));
      REQUIRE(hit.point[i].contains((*again)[i].hi_rational()));
    }
    for (int c = 0; c < 4; ++c) {
      const Rational k1 = c & 1 ? hit.mapped[0].hi : hit.mapped[0].lo;
      const Rational k2 = c & 2 ? hit.mapped[1].hi : hit.mapped[1].lo;
      REQUIRE(region_D(k1, k2).verdict);
    }
  }
}

TEST_CASE("the double screen drops no hits") {
  auto alphas = log_D_alphas();
  auto screened = orbit_search(alphas, region_D_orbit_region(), 3000);
  auto region = region_D_orbit_region();
  region.screen = nullptr;
  auto full = orbit_search(alphas, region, 3000);
  REQUIRE(screened.hits.size() == full.hits.size());
  for (std::size_t i = 0; i < full.hits.size(); ++i) CHECK(screened.hits[i].k == full.hits[i].k);
}

TEST_CASE("rational angle") {
  LogRatio one;
  one.num_base = 2;
  one.den_base = 2;
  one.exact = Rational(1);
  OrbitRegion at_zero;
  at_zero.classify = [](const std::vector<Interval>& box) {
    return box[0].lo == 0 && box[0].hi == 0 ? BoxClass::inside : BoxClass::outside;
  };
  CHECK(orbit_search({one}, at_zero, 50).hits.size() == 50);
  OrbitRegion away;
  away.classify = [](const std::vector<Interval>& box) { return box[0].lo > 0 ? BoxClass::inside : BoxClass::outside; };
  CHECK(orbit_search({one}, away, 50).hits.empty());
}

TEST_CASE("near returns") {
  const double eps = 0.01;
  OrbitRegion corner;
  corner.classify = [&](const std::vector<Interval>& box) {
    const Rational e = rational_from_double(eps);
    if (box[0].hi < e && box[1].hi < e) return BoxClass::inside;
    if (box[0].lo >= e || box[1].lo >= e) return BoxClass::outside;
    return BoxClass::uncertain;
  };
  corner.screen = [&](const std::vector<double>& p) { return p[0] < 2 * eps && p[1] < 2 * eps; };
  auto r = orbit_search({log_ratio(3, 5), log_ratio(3, 7)}, corner, 1'000'000);
  REQUIRE_FALSE(r.hits.empty());
  for (const auto& h : r.hits) {
    CHECK(to_double(h.point[0].hi) < eps);
    CHECK(to_double(h.point[1].hi) < eps);
  }
}

TEST_CASE("dependent orbit closures") {
  auto diag = dependent_orbit_closure(1, -1, 0);
  REQUIRE(diag.families.size() == 1);
  CHECK(diag.families[0].t == 0);
  // only the diagonal has positive length inside the square
  REQUIRE(diag.families[0].segments.size() == 1);
  CHECK(diag.families[0].segments[0].from == Point2{q(0), q(0)});
  CHECK(diag.families[0].segments[0].to == Point2{q(1), q(1)});

  auto vertical = dependent_orbit_closure(1, 0, 0);
  REQUIRE(vertical.families.size() == 1);
  for (const auto& s : vertical.families[0].segments) CHECK(s.from.x == s.to.x);

  auto two = dependent_orbit_closure(2, 3, q(1, 2));
  REQUIRE(two.families.size() == 2);
  CHECK(two.families[0].t == 0);
  CHECK(two.families[1].t == q(1, 2));
  for (const auto& f : two.families) {
    REQUIRE_FALSE(f.segments.empty());
    for (const auto& s : f.segments) {
      for (const auto& p : {s.from, s.to}) {
        Rational w = 2 * p.x + 3 * p.y - f.t;
        CHECK(denominator_of(w) == 1);
        CHECK((p.x >= 0 && p.x <= 1 && p.y >= 0 && p.y <= 1));
      }
    }
  }
  CHECK_THROWS_AS(dependent_orbit_closure(2, 4, 0), DomainError);
}

TEST_CASE("lines against Log(D)") {
  auto classify = log_D_classifier();
  // along the diagonal 5^s - 4^s stays below 4/3, so the second slice inequality fails
  CHECK(line_meets_region(dependent_orbit_closure(1, -1, 0).families[0], classify).result == LineMeets::misses);
  // u = 1 is k1 = 1, inside D for k2 in [7/3, 25/9]
  auto edge = line_meets_region(dependent_orbit_closure(1, 0, 0).families[0], classify);
  CHECK(edge.result == LineMeets::meets);
  // v = u/2 crosses the region; v = (u + 1)/2 stays above it
  auto hit = line_meets_region(dependent_orbit_closure(1, -2, 0).families[0], classify);
  CHECK(hit.result == LineMeets::meets);
  if (hit.witness) {
    CHECK(classify({hit.witness->x, hit.witness->x}, {hit.witness->y, hit.witness->y}) == BoxClass::inside);
  }
}

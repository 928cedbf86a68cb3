#include "cantor/witness.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

namespace cantor {

namespace {

using u128 = unsigned __int128;

Integer ceil_of(const Rational& q) { return -floor_of(-q); }

// Joint top-down search for an integer in [lo, hi] whose digits avoid 0 in
// every base. Digits are chosen in bases[0]; ranges whose common leading
// digits already contain a 0 in another base are pruned.
class ZeroFreeSearch {
 public:
  ZeroFreeSearch(std::vector<int> bases, std::uint64_t budget) : bases_(std::move(bases)), budget_(budget) {}

  std::optional<Integer> find(const Integer& lo, const Integer& hi) {
    if (hi < lo || lo < 1) return std::nullopt;
    const int b = bases_.front();
    // digit count of hi
    unsigned len = static_cast<unsigned>(digits_of(hi, b).digits.size());
    for (unsigned l = static_cast<unsigned>(digits_of(lo, b).digits.size()); l <= len; ++l) {
      if (auto r = descend(Integer(0), l, lo, hi)) return r;
      if (exhausted_) return std::nullopt;
    }
    return std::nullopt;
  }

  bool exhausted() const { return exhausted_; }

 private:
  std::optional<Integer> descend(const Integer& prefix, unsigned remaining, const Integer& lo, const Integer& hi) {
    if (++nodes_ > budget_) {
      exhausted_ = true;
      return std::nullopt;
    }
    const int b = bases_.front();
    if (remaining == 0) {
      for (int c : bases_) {
        if (!uses_only(prefix, DigitSetSpec::nonzero(c))) return std::nullopt;
      }
      return prefix;
    }
    const Integer block = ipow(Integer(b), remaining - 1);
    const Integer ones = (block - 1) / (b - 1);  // 11...1 with remaining-1 digits
    for (int d = 1; d < b; ++d) {
      const Integer next = prefix * b + d;
      const Integer L = next * block + ones;
      const Integer H = next * block + (block - 1);
      if (L > hi) break;
      if (H < lo) continue;
      const Integer wl = L < lo ? lo : L;
      const Integer wh = H > hi ? hi : H;
      if (!leading_digits_ok(wl, wh)) continue;
      if (auto r = descend(next, remaining - 1, lo, hi)) return r;
      if (exhausted_) return std::nullopt;
    }
    return std::nullopt;
  }

  // Digits shared by every number in [L, H] must be nonzero in each base.
  bool leading_digits_ok(const Integer& L, const Integer& H) const {
    for (std::size_t i = 1; i < bases_.size(); ++i) {
      auto a = digits_of(L, bases_[i]).digits;
      auto c = digits_of(H, bases_[i]).digits;
      if (a.size() != c.size()) continue;
      for (std::size_t j = 0; j < a.size() && a[j] == c[j]; ++j) {
        if (a[j] == 0) return false;
      }
    }
    return true;
  }

  std::vector<int> bases_;
  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  bool exhausted_ = false;
};

Check strict_check(std::string name, Rational lhs, Rational rhs) {
  Check c{std::move(name), std::move(lhs), std::move(rhs), true, false};
  c.holds = c.lhs > c.rhs;
  return c;
}

Check weak_check(std::string name, Rational lhs, Rational rhs) {
  Check c{std::move(name), std::move(lhs), std::move(rhs), false, false};
  c.holds = c.lhs >= c.rhs;
  return c;
}

std::vector<int> all_nonzero(int b) {
  std::vector<int> d(static_cast<std::size_t>(b - 1));
  std::iota(d.begin(), d.end(), 1);
  return d;
}

}  // namespace

MultiBaseSpec graham_spec() {
  return MultiBaseSpec({DigitSetSpec::lower_half(3), DigitSetSpec::lower_half(5), DigitSetSpec::lower_half(7)});
}

GrahamReport graham_search(std::uint64_t N) {
  if (N < 1) throw DomainError("graham_search requires N >= 1");
  GrahamReport report;
  report.N = N;
  report.members = enumerate(graham_spec(), N);
  for (auto n : report.members) {
    for (std::uint64_t p : {3u, 5u, 7u}) {
      if (kummer_divides(p, n)) {
        throw std::logic_error("digit enumeration and Kummer's criterion disagree at n = " + std::to_string(n));
      }
    }
  }
  if (N >= 2 && !report.members.empty()) {
    report.empirical_exponent = std::log(static_cast<double>(report.members.size())) / std::log(static_cast<double>(N));
  }
  return report;
}

DensityReport egrs_density(std::uint64_t p, std::uint64_t q, std::uint64_t N, std::optional<DigitSetSpec> Bp,
                           std::optional<DigitSetSpec> Bq, std::uint64_t budget) {
  if (p == q) throw DomainError("egrs_density requires p != q");
  for (auto r : {p, q}) {
    if (r == 2 || !is_prime(r)) throw DomainError("egrs_density requires odd primes, got " + std::to_string(r));
  }
  if (N < 1) throw DomainError("egrs_density requires N >= 1");
  DigitSetSpec sp = Bp ? *Bp : DigitSetSpec::lower_half(static_cast<int>(p));
  DigitSetSpec sq = Bq ? *Bq : DigitSetSpec::lower_half(static_cast<int>(q));
  if (sp.base() != static_cast<int>(p) || sq.base() != static_cast<int>(q)) {
    throw DomainError("digit-set bases must match p and q");
  }
  MultiBaseSpec spec({sp, sq});
  DensityReport report;
  report.p = p;
  report.q = q;
  report.N = N;
  u128 lo = 1;
  for (std::uint64_t k = 0; k < N; ++k) {
    const u128 hi = lo * p;
    if (hi > static_cast<u128>(UINT64_MAX)) {
      throw CapacityError("p^" + std::to_string(k + 1) + " exceeds the 64-bit enumeration range");
    }
    std::uint64_t before = budget;
    auto found = window_has_member(spec, static_cast<std::uint64_t>(lo), static_cast<std::uint64_t>(hi), budget);
    if (!found) {
      report.N = k;
      report.complete = false;
      report.ratio = k == 0 ? 0.0 : static_cast<double>(report.hit_exponents.size()) / static_cast<double>(k);
      throw DensityCapacityError("candidate budget of " + std::to_string(before) + " exhausted at k = " + std::to_string(k),
                                 report);
    }
    if (*found) report.hit_exponents.push_back(k);
    lo = hi;
  }
  report.ratio = static_cast<double>(report.hit_exponents.size()) / static_cast<double>(N);
  return report;
}

std::array<DigitSetSpec, 3> default_triple_specs() {
  return {DigitSetSpec(3, {0, 1}), DigitSetSpec(4, {0, 1}), DigitSetSpec(5, {0, 1})};
}

bool verify_triple(const TripleWitness& t, const std::array<DigitSetSpec, 3>& specs) {
  if (t.x == 0 || t.y == 0 || t.x + t.y != t.z) return false;
  const std::uint64_t v[3] = {t.x, t.y, t.z};
  for (int i = 0; i < 3; ++i) {
    if (!uses_only(v[i], specs[static_cast<std::size_t>(i)])) return false;
    const auto& proof = t.digit_proofs[static_cast<std::size_t>(i)];
    if (proof.base != specs[static_cast<std::size_t>(i)].base() || proof.value() != Integer(v[i])) return false;
  }
  return true;
}

std::vector<TripleWitness> triple_search(std::uint64_t limit, const std::array<DigitSetSpec, 3>& specs) {
  if (limit < 1) throw DomainError("triple_search requires limit >= 1");
  auto list = [limit](const DigitSetSpec& s) { return enumerate(MultiBaseSpec({s}), limit); };
  const auto xs = list(specs[0]);
  const auto ys = list(specs[1]);
  const auto zs = list(specs[2]);
  // walk the sparser summand list and test the other by digits
  const bool walk_y = ys.size() <= xs.size();
  const auto& walk = walk_y ? ys : xs;
  const DigitSetSpec& test = walk_y ? specs[0] : specs[1];

  std::vector<TripleWitness> out;
  std::vector<std::pair<std::uint64_t, std::uint64_t>> found;
  for (auto z : zs) {
    found.clear();
    for (auto w : walk) {
      if (w >= z) break;
      const std::uint64_t other = z - w;
      if (uses_only(other, test)) found.emplace_back(walk_y ? other : w, walk_y ? w : other);
    }
    std::sort(found.begin(), found.end());
    for (const auto& [x, y] : found) {
      TripleWitness t;
      t.x = x;
      t.y = y;
      t.z = z;
      t.digit_proofs = {digits_of(x, specs[0].base()), digits_of(y, specs[1].base()), digits_of(z, specs[2].base())};
      out.push_back(std::move(t));
    }
  }
  return out;
}

NonzeroReport simultaneous_nonzero_search(const std::vector<int>& bases, std::uint64_t limit) {
  if (bases.empty()) throw DomainError("at least one base is required");
  NonzeroReport report;
  std::vector<DigitSetSpec> specs;
  for (int b : bases) {
    if (b < 2) throw DomainError("bases must be at least 2");
    if (b == 2) report.base_two_present = true;
    specs.push_back(DigitSetSpec::nonzero(b));
  }
  report.members = enumerate(MultiBaseSpec(std::move(specs)), limit);
  return report;
}

std::optional<std::uint64_t> find_near_return(const std::vector<int>& bases, const Rational& delta_prime,
                                              std::uint64_t n_max) {
  if (bases.size() < 2) throw DomainError("a near return needs at least two bases");
  if (delta_prime <= 0) throw DomainError("delta' must be positive");
  const double b1 = std::log(static_cast<double>(bases[0]));
  const double tol = to_double(delta_prime);
  for (std::uint64_t n = 1; n <= n_max; ++n) {
    bool candidate = true;
    for (std::size_t i = 1; i < bases.size() && candidate; ++i) {
      const double li = std::log(static_cast<double>(bases[i]));
      const double t = static_cast<double>(n) * b1 / li;
      candidate = std::abs(t - std::round(t)) * li < 2 * tol;
    }
    if (!candidate) continue;
    // exact confirmation
    const Integer denom = ipow(Integer(bases[0]), static_cast<unsigned>(n));
    bool ok = true;
    for (std::size_t i = 1; i < bases.size() && ok; ++i) {
      const double t = static_cast<double>(n) * b1 / std::log(static_cast<double>(bases[i]));
      const auto m = static_cast<unsigned>(std::llround(t));
      Rational r = make_rational(ipow(Integer(bases[i]), m), denom);
      ok = boost::multiprecision::abs(r - 1) < delta_prime;
    }
    if (ok) return n;
  }
  return std::nullopt;
}

Egrs4Report egrs4_block_check(const std::vector<int>& bases, std::uint64_t n, const Rational& delta_prime, int depth) {
  if (bases.size() < 2) throw DomainError("egrs4_block_check needs at least two bases");
  std::set<int> distinct(bases.begin(), bases.end());
  if (distinct.size() != bases.size()) throw DomainError("bases must be pairwise distinct");
  for (int b : bases) {
    if (b < 3) throw DomainError("bases must be at least 3");
  }
  if (n < 1) throw DomainError("scaling exponent n must be positive");
  if (delta_prime <= 0) throw DomainError("delta' must be positive");
  if (depth < 1) throw DomainError("depth must be at least 1");

  Egrs4Report report;
  report.bases = bases;
  report.n = n;
  const Integer scale = ipow(Integer(bases[0]), static_cast<unsigned>(n));
  const double log_b1 = std::log(static_cast<double>(bases[0]));
  for (std::size_t i = 0; i < bases.size(); ++i) {
    std::uint64_t m = i == 0 ? n
                             : static_cast<std::uint64_t>(std::llround(static_cast<double>(n) * log_b1 /
                                                                       std::log(static_cast<double>(bases[i]))));
    report.m.push_back(m);
    report.ratios.push_back(make_rational(ipow(Integer(bases[i]), static_cast<unsigned>(m)), scale));
  }

  // frames within delta' of the identity
  for (std::size_t i = 1; i < bases.size(); ++i) {
    report.checks.push_back(strict_check("delta' > |r_" + std::to_string(i + 1) + " - 1|", delta_prime,
                                         boost::multiprecision::abs(report.ratios[i] - 1)));
  }
  // C_i has hull [b/(b-1), b], largest gap 1/(b-1) and S = (b-2)/(b-1)
  Rational min_hull, max_gap;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    const int b = bases[i];
    Rational h = make_rational(Integer(b) * (b - 2), b - 1);
    Rational g = make_rational(1, b - 1);
    if (i == 0 || h < min_hull) min_hull = h;
    if (i == 0 || g > max_gap) max_gap = g;
  }
  report.checks.push_back(strict_check("(1 - delta') min hull > (1 + delta') max gap", (1 - delta_prime) * min_hull,
                                       (1 + delta_prime) * max_gap));
  for (std::size_t i = 0; i < bases.size(); ++i) {
    for (std::size_t j = i + 1; j < bases.size(); ++j) {
      Rational si = make_rational(bases[i] - 2, bases[i] - 1);
      Rational sj = make_rational(bases[j] - 2, bases[j] - 1);
      report.checks.push_back(
          weak_check("S_" + std::to_string(i + 1) + " + S_" + std::to_string(j + 1) + " >= 1", si + sj, 1));
    }
  }
  for (const auto& c : report.checks) {
    if (!c.holds) {
      report.refusal = "violated: " + c.name;
      return report;
    }
  }

  std::vector<MissingDigitSet> sets;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    sets.emplace_back(bases[i], all_nonzero(bases[i]), AffineMap{report.ratios[i] * bases[i], 0});
  }
  auto summary = [](const MissingDigitSet& s) {
    auto level1 = approx(s, 1);
    return SetSummary{*s.closed_form_normalized_thickness(), s.hull(), gaps(level1)};
  };
  for (std::size_t j = 1; j < sets.size(); ++j) {
    report.certificates.push_back(newhouse_intersect(summary(sets[0]), summary(sets[j])));
    if (!report.certificates.back().verdict) {
      report.refusal = "gap-lemma certificate failed for bases " + std::to_string(bases[0]) + " and " +
                       std::to_string(bases[j]);
      return report;
    }
  }

  IntervalUnion U = approx(sets[0], depth);
  for (std::size_t j = 0; j < sets.size(); ++j) {
    if (j > 0) U = intersect(U, approx(sets[j], depth));
    IntersectionStep step;
    step.index = j;
    step.intervals = U.size();
    step.measure = U.measure();
    if (!U.empty()) {
      Interval h = U.hull();
      for (Integer l = floor_of(h.lo); l < ceil_of(h.hi); ++l) {
        bool meets = !clip(U, {Rational(l), Rational(l + 1)}).empty();
        step.unit_windows.emplace_back(static_cast<long>(l), meets);
      }
    }
    report.steps.push_back(std::move(step));
    if (U.empty()) {
      report.refusal = "finite-depth intersection is empty after base " + std::to_string(bases[j]);
      report.intersection = U;
      return report;
    }
  }
  report.intersection = U;

  // integer N with N / b_1^n in U and every expansion zero-free
  Integer lo_window = 0, hi_window = -1;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    Integer a = ipow(Integer(bases[i]), static_cast<unsigned>(report.m[i]));
    Integer b = a * bases[i] - 1;
    if (i == 0 || a > lo_window) lo_window = a;
    if (i == 0 || b < hi_window) hi_window = b;
  }
  ZeroFreeSearch search(bases, 2'000'000);
  for (std::size_t i = 0; i < U.size() && !report.witness; ++i) {
    Integer lo = ceil_of(U.lo(i) * scale);
    Integer hi = floor_of(U.hi(i) * scale);
    if (lo < lo_window) lo = lo_window;
    if (hi > hi_window) hi = hi_window;
    if (auto w = search.find(lo, hi)) report.witness = *w;
    if (search.exhausted()) break;
  }
  if (!report.witness) {
    report.refusal = search.exhausted() ? "integer witness search exhausted its node budget"
                                        : "no zero-free integer in the finite-depth intersection";
    return report;
  }
  for (int b : bases) {
    if (!uses_only(*report.witness, DigitSetSpec::nonzero(b))) {
      throw std::logic_error("integer witness failed its digit recheck");
    }
    report.witness_digits.push_back(digits_of(*report.witness, b));
  }
  if (!U.contains(make_rational(*report.witness, scale))) throw std::logic_error("integer witness outside the intersection");
  return report;
}

WaringReport waring_cover_check(int k, int terms, int depth, const Interval& target) {
  if (k < 2) throw DomainError("waring_cover_check requires k >= 2");
  if (terms < 1) throw DomainError("waring_cover_check requires terms >= 1");
  if (depth < 1) throw DomainError("waring_cover_check requires depth >= 1");
  if (target.hi < target.lo) throw DomainError("target interval has hi < lo");
  const IntervalUnion base = power_image(approx(MissingDigitSet(3, {0, 2}), depth), k);
  WaringReport report;
  report.k = k;
  report.terms = terms;
  report.depth = depth;
  report.sum = base;
  for (int t = 1; t < terms; ++t) report.sum = sumset(report.sum, base);
  report.is_interval = is_interval(report.sum);
  report.hull = report.sum.hull();
  for (std::size_t i = 0; i < report.sum.size(); ++i) {
    if (report.sum.lo(i) <= target.lo && target.hi <= report.sum.hi(i)) report.covers_target = true;
  }
  report.max_gap = largest_gap(report.sum);
  return report;
}

}  // namespace cantor

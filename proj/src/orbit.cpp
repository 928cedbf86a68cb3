#include "cantor/orbit.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

using u128 = unsigned __int128;

// base^e, or 0 when it exceeds limit.
u128 bounded_pow(std::uint64_t base, unsigned e, u128 limit) {
  u128 r = 1;
  for (unsigned i = 0; i < e; ++i) {
    r *= base;
    if (r > limit) return 0;
  }
  return r;
}

std::uint64_t integer_root(std::uint64_t b, unsigned e) {
  auto r = static_cast<std::uint64_t>(std::llround(std::pow(static_cast<double>(b), 1.0 / e)));
  // correct the floating estimate
  while (r > 1 && (bounded_pow(r, e, b) == 0 || bounded_pow(r, e, b) > b)) --r;
  while (bounded_pow(r + 1, e, b) != 0 && bounded_pow(r + 1, e, b) <= b) ++r;
  return r;
}

Integer round_half_up(const Rational& q) { return floor_of(q + make_rational(1, 2)); }

Interval to_interval(const Enclosure& e) { return {e.lo_rational(), e.hi_rational()}; }

// Exact check that prod b_i^e_i == 1; refuses candidates whose products
// would be too large to form.
bool verify_relation(const std::vector<std::uint64_t>& bases, const std::vector<long long>& e) {
  if (std::all_of(e.begin(), e.end(), [](long long x) { return x == 0; })) return false;
  double total_bits = 0;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    total_bits += std::abs(static_cast<double>(e[i])) * std::log2(static_cast<double>(bases[i]));
  }
  if (total_bits > 4e6) return false;
  Integer lhs = 1, rhs = 1;
  for (std::size_t i = 0; i < bases.size(); ++i) {
    if (e[i] > 0) lhs *= ipow(Integer(bases[i]), static_cast<unsigned>(e[i]));
    if (e[i] < 0) rhs *= ipow(Integer(bases[i]), static_cast<unsigned>(-e[i]));
  }
  return lhs == rhs;
}

struct GramSchmidt {
  std::vector<std::vector<Rational>> mu;
  std::vector<Rational> norm2;  // |b*_i|^2
};

Rational dot(const std::vector<Integer>& a, const std::vector<Rational>& b) {
  Rational s = 0;
  for (std::size_t i = 0; i < a.size(); ++i) s += Rational(a[i]) * b[i];
  return s;
}

GramSchmidt gram_schmidt(const std::vector<std::vector<Integer>>& basis) {
  const std::size_t n = basis.size(), dim = basis.front().size();
  GramSchmidt gs;
  gs.mu.assign(n, std::vector<Rational>(n, Rational(0)));
  gs.norm2.assign(n, Rational(0));
  std::vector<std::vector<Rational>> star(n, std::vector<Rational>(dim));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t d = 0; d < dim; ++d) star[i][d] = Rational(basis[i][d]);
    for (std::size_t j = 0; j < i; ++j) {
      gs.mu[i][j] = dot(basis[i], star[j]) / gs.norm2[j];
      for (std::size_t d = 0; d < dim; ++d) star[i][d] -= gs.mu[i][j] * star[j][d];
    }
    Rational s = 0;
    for (const auto& x : star[i]) s += x * x;
    gs.norm2[i] = s;
  }
  return gs;
}

// Textbook LLL with delta = 3/4 and exact rational Gram-Schmidt data.
GramSchmidt lll_reduce(std::vector<std::vector<Integer>>& basis) {
  const std::size_t n = basis.size();
  const Rational delta = make_rational(3, 4);
  GramSchmidt gs = gram_schmidt(basis);
  std::size_t k = 1;
  while (k < n) {
    for (std::size_t j = k; j-- > 0;) {
      Integer q = round_half_up(gs.mu[k][j]);
      if (q == 0) continue;
      for (std::size_t d = 0; d < basis[k].size(); ++d) basis[k][d] -= q * basis[j][d];
      for (std::size_t i = 0; i < j; ++i) gs.mu[k][i] -= Rational(q) * gs.mu[j][i];
      gs.mu[k][j] -= Rational(q);
    }
    if (gs.norm2[k] >= (delta - gs.mu[k][k - 1] * gs.mu[k][k - 1]) * gs.norm2[k - 1]) {
      ++k;
    } else {
      std::swap(basis[k], basis[k - 1]);
      gs = gram_schmidt(basis);
      k = std::max<std::size_t>(k - 1, 1);
    }
  }
  return gs;
}

Enclosure alpha_at(const LogRatio& a, mpfr_prec_t bits) {
  if (a.exact) return Enclosure::exact(*a.exact, bits);
  return log_ratio(a.num_base, a.den_base, bits).value;
}

BigFloat floor_of(const BigFloat& x) {
  BigFloat f(x.precision());
  mpfr_floor(f.get(), x.get());
  return f;
}

}  // namespace

PerfectPower primitive_root(std::uint64_t b) {
  if (b < 2) throw DomainError("primitive_root requires b >= 2");
  for (unsigned e = 63; e >= 2; --e) {
    std::uint64_t r = integer_root(b, e);
    if (r >= 2 && bounded_pow(r, e, b) == b) return {r, e};
  }
  return {b, 1};
}

LogRatio log_ratio(std::uint64_t b1, std::uint64_t b2, mpfr_prec_t bits) {
  if (b1 < 2 || b2 < 2) throw DomainError("log_ratio requires bases >= 2");
  if (bits < 2) throw DomainError("precision must be at least 2 bits");
  LogRatio r;
  r.num_base = b1;
  r.den_base = b2;
  r.bits = bits;
  PerfectPower p1 = primitive_root(b1), p2 = primitive_root(b2);
  if (p1.root == p2.root) {
    r.exact = make_rational(p1.exponent, p2.exponent);
    r.value = Enclosure::exact(*r.exact, bits);
    return r;
  }
  const Rational target = Rational(1) / (Integer(1) << static_cast<unsigned>(bits));
  for (mpfr_prec_t work = bits + 32;; work *= 2) {
    Enclosure v = Enclosure::log_of(b1, work).divided_by_positive(Enclosure::log_of(b2, work));
    if (v.width() <= target) {
      r.value = std::move(v);
      return r;
    }
  }
}

IndependenceReport multiplicative_independence_check(const std::vector<std::uint64_t>& bases, std::uint64_t bound) {
  if (bases.empty()) throw DomainError("independence check needs at least one base");
  for (auto b : bases) {
    if (b < 2) throw DomainError("bases must be at least 2");
  }
  const std::size_t n = bases.size();
  IndependenceReport report;
  report.bound = bound;
  if (n == 1) {
    report.exhaustive = true;
    report.method = "single base";
    return report;
  }
  // exact perfect-power analysis on every pair
  std::vector<PerfectPower> roots;
  for (auto b : bases) roots.push_back(primitive_root(b));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (roots[i].root != roots[j].root) continue;
      // b_i^(e_j / g) = b_j^(e_i / g)
      unsigned g = std::gcd(roots[i].exponent, roots[j].exponent);
      report.kind = Independence::dependent;
      report.witness.assign(n, 0);
      report.witness[i] = roots[j].exponent / g;
      report.witness[j] = -static_cast<long long>(roots[i].exponent / g);
      report.method = "perfect powers";
      return report;
    }
  }
  if (n == 2) {
    report.exhaustive = true;
    report.method = "perfect powers";
    return report;
  }

  // Lattice rows (e_i, round(C log b_i)). A relation with |x_i| <= B gives a
  // lattice vector of length at most R = B sqrt(n + n^2) once C eps <= 1/2;
  // if every Gram-Schmidt norm exceeds R no such relation exists.
  report.method = "lattice reduction";
  const double nn = static_cast<double>(n);
  const double R = static_cast<double>(bound) * std::sqrt(nn + nn * nn);
  const Rational R2 = rational_from_double(R * R) + 1;
  auto c_bits = static_cast<unsigned>(nn * std::log2(R + 2.0) + 32);
  for (; c_bits <= 4096; c_bits *= 2) {
    const mpfr_prec_t prec = static_cast<mpfr_prec_t>(c_bits) + 64;
    const Integer C = Integer(1) << c_bits;
    std::vector<std::vector<Integer>> basis(n, std::vector<Integer>(n + 1, Integer(0)));
    for (std::size_t i = 0; i < n; ++i) {
      Enclosure lg = Enclosure::log_of(bases[i], prec);
      basis[i][i] = 1;
      basis[i][n] = round_half_up((lg.lo_rational() + lg.hi_rational()) / 2 * C);
    }
    GramSchmidt gs = lll_reduce(basis);
    for (const auto& row : basis) {
      std::vector<long long> e(n);
      bool small = true;
      for (std::size_t i = 0; i < n && small; ++i) {
        if (boost::multiprecision::abs(row[i]) > Integer(bound)) {
          small = false;
        } else {
          e[i] = static_cast<long long>(row[i]);
        }
      }
      if (small && verify_relation(bases, e)) {
        report.kind = Independence::dependent;
        report.witness = e;
        return report;
      }
    }
    if (std::all_of(gs.norm2.begin(), gs.norm2.end(), [&R2](const Rational& x) { return x > R2; })) {
      report.exhaustive = true;
      return report;
    }
  }
  return report;
}

mpfr_prec_t orbit_precision(std::uint64_t k_max, const OrbitSearchOptions& options) {
  if (!(options.tolerance > 0)) throw DomainError("orbit tolerance must be positive");
  const double need = std::log2(static_cast<double>(std::max<std::uint64_t>(k_max, 1))) - std::log2(options.tolerance / 10);
  mpfr_prec_t bits = options.start_bits;
  while (static_cast<double>(bits) <= need) {
    bits *= 2;
    if (bits > options.max_bits) {
      throw CapacityError("orbit precision would exceed the ceiling of " + std::to_string(options.max_bits) + " bits");
    }
  }
  return bits;
}

std::optional<std::vector<Enclosure>> fractional_parts(const std::vector<Enclosure>& alphas, std::uint64_t k) {
  std::vector<Enclosure> out;
  out.reserve(alphas.size());
  for (const auto& a : alphas) {
    Enclosure x = a.times_unsigned(static_cast<unsigned long>(k));
    BigFloat f = floor_of(x.lo());
    if (!mpfr_equal_p(f.get(), floor_of(x.hi()).get())) return std::nullopt;
    mpfr_sub(x.lo().get(), x.lo().get(), f.get(), MPFR_RNDD);
    mpfr_sub(x.hi().get(), x.hi().get(), f.get(), MPFR_RNDU);
    out.push_back(std::move(x));
  }
  return out;
}

OrbitSearchResult orbit_search(const std::vector<LogRatio>& alphas, const OrbitRegion& region, std::uint64_t k_max,
                               const OrbitSearchOptions& options) {
  if (alphas.empty()) throw DomainError("orbit_search needs at least one angle");
  if (k_max < 1) throw DomainError("orbit_search requires k_max >= 1");
  if (!region.classify) throw DomainError("orbit_search needs a region classifier");
  OrbitSearchResult result;
  result.bits = orbit_precision(k_max, options);
  std::vector<Enclosure> enclosures;
  std::vector<double> approx;
  for (const auto& a : alphas) {
    enclosures.push_back(alpha_at(a, result.bits));
    approx.push_back(enclosures.back().mid_double());
  }
  std::vector<double> screen_point(alphas.size());
  for (std::uint64_t k = std::max<std::uint64_t>(options.k_min, 1); k <= k_max; ++k) {
    if (region.screen) {
      for (std::size_t i = 0; i < approx.size(); ++i) {
        double x = approx[i] * static_cast<double>(k);
        screen_point[i] = x - std::floor(x);
      }
      if (!region.screen(screen_point)) continue;
    }
    OrbitHit hit;
    hit.k = k;
    auto frac = fractional_parts(enclosures, k);
    if (!frac) {
      result.uncertain.push_back(std::move(hit));
      continue;
    }
    hit.error_bound = 0;
    for (const auto& f : *frac) {
      hit.point.push_back(to_interval(f));
      hit.error_bound = std::max(hit.error_bound, hit.point.back().length());
    }
    if (region.map) {
      for (const auto& m : region.map(*frac)) hit.mapped.push_back(to_interval(m));
    } else {
      hit.mapped = hit.point;
    }
    switch (region.classify(hit.mapped)) {
      case BoxClass::inside: result.hits.push_back(std::move(hit)); break;
      case BoxClass::uncertain: result.uncertain.push_back(std::move(hit)); break;
      case BoxClass::outside: break;
    }
  }
  return result;
}

std::vector<Enclosure> region_D_map(const std::vector<Enclosure>& uv) {
  if (uv.size() != 2) throw DomainError("region_D_map expects two coordinates");
  const Enclosure one = Enclosure::from_integer(1, uv[0].precision());
  return {(one - uv[0]).power_of(4), (one - uv[1]).power_of(5)};
}

OrbitRegion region_D_orbit_region() {
  OrbitRegion region;
  region.map = region_D_map;
  region.classify = [](const std::vector<Interval>& box) { return classify_region_D_box(box.at(0), box.at(1)); };
  region.screen = [](const std::vector<double>& uv) {
    constexpr double edge = 1e-6, slack = 1e-6;
    for (double x : uv) {
      if (x < edge || x > 1 - edge) return true;  // wrap-around is ambiguous in doubles
    }
    const double k1 = std::pow(4.0, 1 - uv[0]);
    const double k2 = std::pow(5.0, 1 - uv[1]);
    for (const auto& row : region_D_constraints()) {
      double g = to_double(row.c0) + to_double(row.c1) * k1 + to_double(row.c2) * k2;
      if (g < -slack) return false;
    }
    return true;
  };
  return region;
}

LinearFormValue linear_form(long l1, long l2, const LogRatio& a, const LogRatio& b) {
  const mpfr_prec_t prec = std::max(a.value.precision(), b.value.precision());
  const Enclosure ea = a.exact ? Enclosure::exact(*a.exact, prec) : a.value;
  const Enclosure eb = b.exact ? Enclosure::exact(*b.exact, prec) : b.value;
  LinearFormValue out;
  out.value = ea.times(l1) + eb.times(l2);
  out.approx = out.value.mid_double();
  out.error = out.value.width_double();
  const BigFloat f_lo = floor_of(out.value.lo());
  const BigFloat f_hi = floor_of(out.value.hi());
  out.certified_non_integer = mpfr_equal_p(f_lo.get(), f_hi.get()) && !mpfr_equal_p(f_lo.get(), out.value.lo().get());
  if (out.certified_non_integer) {
    BigFloat below(prec), above(prec);
    mpfr_sub(below.get(), out.value.lo().get(), f_lo.get(), MPFR_RNDD);
    mpfr_add_ui(above.get(), f_lo.get(), 1, MPFR_RNDD);
    mpfr_sub(above.get(), above.get(), out.value.hi().get(), MPFR_RNDD);
    out.distance_to_integer = std::min(mpfr_get_d(below.get(), MPFR_RNDD), mpfr_get_d(above.get(), MPFR_RNDD));
  }
  return out;
}

OrbitClosure dependent_orbit_closure(long l1, long l2, const Rational& c) {
  if (std::gcd(l1, l2) != 1) throw DomainError("dependent_orbit_closure requires gcd(l1, l2) = 1");
  OrbitClosure out;
  out.l1 = l1;
  out.l2 = l2;
  out.c = c;
  const Integer q = denominator_of(c);
  if (q > 100000) throw CapacityError("denominator of c is too large to list its line families");
  const long smin = std::min(0L, l1) + std::min(0L, l2);
  const long smax = std::max(0L, l1) + std::max(0L, l2);
  const Rational L1(l1), L2(l2);
  for (long j = 0; j < static_cast<long>(q); ++j) {
    LineFamily family;
    family.t = make_rational(j, q);
    for (long n = smin - 1; n <= smax; ++n) {
      const Rational s = Rational(n) + family.t;
      if (s < smin || s > smax) continue;
      std::vector<Point2> pts;
      auto add = [&pts](Rational x, Rational y) {
        if (x < 0 || x > 1 || y < 0 || y > 1) return;
        Point2 p{std::move(x), std::move(y)};
        if (std::find(pts.begin(), pts.end(), p) == pts.end()) pts.push_back(std::move(p));
      };
      if (l2 != 0) {
        add(Rational(0), s / L2);
        add(Rational(1), (s - L1) / L2);
      }
      if (l1 != 0) {
        add(s / L1, Rational(0));
        add((s - L2) / L1, Rational(1));
      }
      if (pts.size() < 2) continue;
      std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
      });
      family.segments.push_back({pts.front(), pts.back()});
    }
    out.families.push_back(std::move(family));
  }
  return out;
}

std::string to_string(LineMeets m) {
  switch (m) {
    case LineMeets::meets: return "meets";
    case LineMeets::misses: return "misses";
    case LineMeets::undetermined: return "undetermined";
  }
  return "?";
}

UVClassifier log_D_classifier(mpfr_prec_t bits) {
  return [bits](const Interval& u, const Interval& v) {
    // 4^(1-u) is decreasing in u, so the image box comes from the opposite ends
    auto image = [bits](const Interval& w, std::uint64_t base) {
      Enclosure at_hi = Enclosure::exact(1 - w.hi, bits).power_of(base);
      Enclosure at_lo = Enclosure::exact(1 - w.lo, bits).power_of(base);
      return Interval{at_hi.lo_rational(), at_lo.hi_rational()};
    };
    return classify_region_D_box(image(u, 4), image(v, 5));
  };
}

LineMeetsReport line_meets_region(const LineFamily& family, const UVClassifier& classify, int max_depth) {
  LineMeetsReport report;
  bool unresolved = false;
  struct Piece {
    Rational a, b;
    int depth;
  };
  for (const auto& seg : family.segments) {
    const Rational dx = seg.to.x - seg.from.x, dy = seg.to.y - seg.from.y;
    auto at = [&](const Rational& s) { return Point2{seg.from.x + s * dx, seg.from.y + s * dy}; };
    std::vector<Piece> stack{{Rational(0), Rational(1), 0}};
    while (!stack.empty()) {
      Piece p = stack.back();
      stack.pop_back();
      Point2 pa = at(p.a), pb = at(p.b);
      Interval u{std::min(pa.x, pb.x), std::max(pa.x, pb.x)};
      Interval v{std::min(pa.y, pb.y), std::max(pa.y, pb.y)};
      switch (classify(u, v)) {
        case BoxClass::inside:
          report.result = LineMeets::meets;
          report.witness = at((p.a + p.b) / 2);
          return report;
        case BoxClass::outside: break;
        case BoxClass::uncertain:
          if (p.depth >= max_depth) {
            unresolved = true;
          } else {
            Rational mid = (p.a + p.b) / 2;
            stack.push_back({mid, p.b, p.depth + 1});
            stack.push_back({p.a, mid, p.depth + 1});
          }
          break;
      }
    }
  }
  report.result = unresolved ? LineMeets::undetermined : LineMeets::misses;
  return report;
}

}  // namespace cantor

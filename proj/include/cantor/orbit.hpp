#pragma once

// Logarithm ratios with certified error, fractional-part orbits of rotation
// vectors built from them, and the line families that replace the orbit
// closure when the angles satisfy a rational relation.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cantor/certify.hpp"
#include "cantor/precise.hpp"

namespace cantor {

// log(num_base) / log(den_base).
struct LogRatio {
  std::uint64_t num_base = 2;
  std::uint64_t den_base = 2;
  mpfr_prec_t bits = 128;
  Enclosure value{128};
  // Set when the ratio is rational (both bases are powers of one integer).
  std::optional<Rational> exact;
};

// Enclosure width is at most 2^-bits.
LogRatio log_ratio(std::uint64_t b1, std::uint64_t b2, mpfr_prec_t bits = 128);

// b = root^exponent with the largest possible exponent.
struct PerfectPower {
  std::uint64_t root;
  unsigned exponent;
};
PerfectPower primitive_root(std::uint64_t b);

enum class Independence { dependent, no_small_relation };

struct IndependenceReport {
  Independence kind = Independence::no_small_relation;
  // Exponents e with prod b_i^e_i = 1, verified exactly.
  std::vector<long long> witness;
  // Coefficient bound of the search.
  std::uint64_t bound = 0;
  // True when every relation with |e_i| <= bound has been ruled out.
  bool exhaustive = false;
  std::string method;
};

// Pairs are decided by exact perfect-power analysis; longer tuples by lattice
// reduction on high-precision logarithms. A no_small_relation answer is not a
// proof of independence unless exhaustive is set, and even then only up to
// the bound.
IndependenceReport multiplicative_independence_check(const std::vector<std::uint64_t>& bases,
                                                     std::uint64_t bound = 1000000);

// Region tests for orbit points. classify receives rational boxes that are
// certified to contain the mapped orbit point.
struct OrbitRegion {
  // Fractional parts to region coordinates; identity when empty.
  std::function<std::vector<Enclosure>(const std::vector<Enclosure>&)> map;
  std::function<BoxClass(const std::vector<Interval>&)> classify;
  // Cheap screen on double fractional parts; false skips the point. Must
  // only reject points well outside the region.
  std::function<bool(const std::vector<double>&)> screen;
};

struct OrbitSearchOptions {
  double tolerance = 1e-20;
  mpfr_prec_t start_bits = 128;
  mpfr_prec_t max_bits = 4096;
  std::uint64_t k_min = 1;
};

struct OrbitHit {
  std::uint64_t k = 0;
  std::vector<Interval> point;   // enclosures of {k alpha_i}
  std::vector<Interval> mapped;  // enclosures of the mapped coordinates
  Rational error_bound;          // widest fractional-part enclosure
};

struct OrbitSearchResult {
  std::vector<OrbitHit> hits;
  std::vector<OrbitHit> uncertain;
  mpfr_prec_t bits = 0;
};

// Precision used for a scan to k_max: starting at start_bits, doubled until
// k_max * 2^-bits < tolerance / 10. Throws CapacityError past max_bits.
mpfr_prec_t orbit_precision(std::uint64_t k_max, const OrbitSearchOptions& options);

OrbitSearchResult orbit_search(const std::vector<LogRatio>& alphas, const OrbitRegion& region, std::uint64_t k_max,
                               const OrbitSearchOptions& options = {});

// Enclosures of {k alpha}; std::nullopt when the enclosure of k alpha
// straddles an integer.
std::optional<std::vector<Enclosure>> fractional_parts(const std::vector<Enclosure>& alphas, std::uint64_t k);

// (u, v) -> (4^(1-u), 5^(1-v)), the normal-vector coordinates (k1, k2).
std::vector<Enclosure> region_D_map(const std::vector<Enclosure>& uv);
// Orbit region for V_k in D with alphas (log3/log4, log3/log5).
OrbitRegion region_D_orbit_region();

struct LinearFormValue {
  Enclosure value{128};
  double approx = 0;
  double error = 0;                // enclosure width
  double distance_to_integer = 0;  // lower bound
  bool certified_non_integer = false;
};

LinearFormValue linear_form(long l1, long l2, const LogRatio& a, const LogRatio& b);

struct Point2 {
  Rational x, y;
  bool operator==(const Point2&) const = default;
};

struct Segment {
  Point2 from, to;
};

// The part of {l1 x + l2 y = n + t : n integer} inside [0,1]^2.
struct LineFamily {
  Rational t;
  std::vector<Segment> segments;
};

struct OrbitClosure {
  long l1 = 0, l2 = 0;
  Rational c;
  std::vector<LineFamily> families;  // t = 0, 1/q, ..., (q-1)/q
};

OrbitClosure dependent_orbit_closure(long l1, long l2, const Rational& c);

enum class LineMeets { meets, misses, undetermined };
std::string to_string(LineMeets m);

using UVClassifier = std::function<BoxClass(const Interval& u, const Interval& v)>;

// Log(D) = {(u, v) : (4^(1-u), 5^(1-v)) in D}, with outward-rounded images.
UVClassifier log_D_classifier(mpfr_prec_t bits = 128);

struct LineMeetsReport {
  LineMeets result = LineMeets::undetermined;
  std::optional<Point2> witness;  // a segment point certified inside
};

// Bisects every segment of the family to the given depth.
LineMeetsReport line_meets_region(const LineFamily& family, const UVClassifier& classify, int max_depth = 24);

}  // namespace cantor

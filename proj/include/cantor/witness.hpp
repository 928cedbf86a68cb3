#pragma once

// Desk-scale constructive searches: Kummer candidates coprime to 105,
// density of exponent windows, x + y = z triples, integers without zero
// digits in several bases, and Waring-type coverage by the Cantor set.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cantor/certify.hpp"
#include "cantor/errors.hpp"
#include "cantor/fractal.hpp"
#include "cantor/restricted.hpp"

namespace cantor {

struct GrahamReport {
  std::uint64_t N = 0;
  std::vector<std::uint64_t> members;
  std::optional<double> empirical_exponent;  // log(count) / log(N)
};

// The bases 3, 5, 7 with digit sets {0..(p-1)/2}.
MultiBaseSpec graham_spec();

// Members of [1, N], each cross-checked against kummer_divides.
GrahamReport graham_search(std::uint64_t N);

struct DensityReport {
  std::uint64_t p = 0, q = 0;
  std::uint64_t N = 0;  // exponents k = 0 .. N-1 examined
  std::vector<std::uint64_t> hit_exponents;
  double ratio = 0;
  bool complete = true;
};

class DensityCapacityError : public CapacityError {
 public:
  DensityCapacityError(const std::string& what, DensityReport partial)
      : CapacityError(what), partial_(std::move(partial)) {}
  const DensityReport& partial() const { return partial_; }

 private:
  DensityReport partial_;
};

inline constexpr std::uint64_t kDefaultDensityBudget = 50'000'000;

// For each k < N, decides whether [p^k, p^(k+1)) meets the restricted set.
// Digit sets default to {0..(p-1)/2} and {0..(q-1)/2}. Throws
// DensityCapacityError carrying the partial report when the budget runs out.
DensityReport egrs_density(std::uint64_t p, std::uint64_t q, std::uint64_t N,
                           std::optional<DigitSetSpec> Bp = std::nullopt, std::optional<DigitSetSpec> Bq = std::nullopt,
                           std::uint64_t budget = kDefaultDensityBudget);

struct TripleWitness {
  std::uint64_t x = 0, y = 0, z = 0;
  std::array<DigitExpansion, 3> digit_proofs;
  bool operator==(const TripleWitness&) const = default;
};

std::array<DigitSetSpec, 3> default_triple_specs();

// All x + y = z with z <= limit, x in N_{b1}, y in N_{b2}, z in N_{b3};
// ascending by z, then x.
std::vector<TripleWitness> triple_search(std::uint64_t limit, const std::array<DigitSetSpec, 3>& specs = default_triple_specs());

// Independent recheck of one witness.
bool verify_triple(const TripleWitness& t, const std::array<DigitSetSpec, 3>& specs);

struct NonzeroReport {
  std::vector<std::uint64_t> members;
  // Base 2 forces n = 2^m - 1.
  bool base_two_present = false;
};

NonzeroReport simultaneous_nonzero_search(const std::vector<int>& bases, std::uint64_t limit);

// Smallest n <= n_max such that every b_i^(m_i) / b_1^n lies within delta'
// of 1 for the nearest exponents m_i.
std::optional<std::uint64_t> find_near_return(const std::vector<int>& bases, const Rational& delta_prime,
                                              std::uint64_t n_max);

struct IntersectionStep {
  std::size_t index = 0;        // bases[0..index] intersected
  std::size_t intervals = 0;
  Rational measure;
  // For each l, whether the intersection meets [l, l+1].
  std::vector<std::pair<long, bool>> unit_windows;
};

struct Egrs4Report {
  std::vector<int> bases;
  std::uint64_t n = 0;
  std::vector<std::uint64_t> m;       // nearest exponents, m[0] = n
  std::vector<Rational> ratios;       // b_i^(m_i) / b_1^n
  std::vector<Check> checks;
  std::vector<Certificate> certificates;  // pairwise gap-lemma certificates
  std::optional<std::string> refusal;
  std::vector<IntersectionStep> steps;
  IntervalUnion intersection;
  std::optional<Integer> witness;
  std::vector<DigitExpansion> witness_digits;
  bool ok() const { return !refusal && witness.has_value(); }
};

// C_i = A_i cap [1, b_i] rescaled by b_i^(m_i) / b_1^n, intersected at the
// given depth, followed by a search for an integer whose expansion in every
// base avoids the digit 0.
Egrs4Report egrs4_block_check(const std::vector<int>& bases, std::uint64_t n, const Rational& delta_prime,
                              int depth = 3);

struct WaringReport {
  int k = 2;
  int terms = 1;
  int depth = 0;
  IntervalUnion sum;
  bool is_interval = false;
  Interval hull;
  bool covers_target = false;
  Rational max_gap;
};

// terms-fold sumset of power_image(approx(C_3, depth), k), C_3 the middle-third set.
WaringReport waring_cover_check(int k, int terms, int depth, const Interval& target);

}  // namespace cantor

#pragma once

// Integers whose expansions in several bases simultaneously avoid forbidden
// digits, and growth diagnostics for their counting function.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "cantor/digits.hpp"

namespace cantor {

class MultiBaseSpec {
 public:
  explicit MultiBaseSpec(std::vector<DigitSetSpec> specs);

  const std::vector<DigitSetSpec>& specs() const { return specs_; }
  std::size_t size() const { return specs_.size(); }

  // Index of the sparsest digit set (smallest log|B|/log b), ties to the larger base.
  std::size_t generating_index() const;

  bool contains(std::uint64_t n) const;

 private:
  std::vector<DigitSetSpec> specs_;
};

// Calls visit(n) for every member n in [1, N], in ascending order. Returning
// false from visit stops the walk early.
void for_each_member(const MultiBaseSpec& spec, std::uint64_t N, const std::function<bool(std::uint64_t)>& visit);

std::vector<std::uint64_t> enumerate(const MultiBaseSpec& spec, std::uint64_t N);

// Diagnostic only: the comparison exponent s - (k-1) is conjectural.
struct GrowthReport {
  std::uint64_t N = 0;
  std::uint64_t count = 0;
  double s = 0;                   // sum of log|B_i| / log b_i
  double s_error = 0;             // certified enclosure width of s
  double predicted_exponent = 0;  // s - (k - 1)
  std::optional<double> empirical_exponent;  // log(count) / log(N)
};

GrowthReport growth_report(const MultiBaseSpec& spec, std::uint64_t N);

// Members of [lo, hi) generated by digit DFS in the generating base, with a
// candidate budget; returns std::nullopt when the budget runs out before the
// window is decided. Used by the density searches.
std::optional<bool> window_has_member(const MultiBaseSpec& spec, std::uint64_t lo, std::uint64_t hi,
                                      std::uint64_t& budget);

}  // namespace cantor

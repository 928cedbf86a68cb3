#pragma once

// Missing-digit self-similar sets, their finite-depth interval models and
// thickness in the sense of Newhouse.

#include <optional>
#include <vector>

#include "cantor/interval_union.hpp"

namespace cantor {

// x -> scale * x + shift
struct AffineMap {
  Rational scale = 1;
  Rational shift = 0;

  Rational apply(const Rational& x) const { return scale * x + shift; }
};

// A_b^B: points of [0,1] with some base-b expansion using only digits in B,
// carried through an affine frame.
class MissingDigitSet {
 public:
  MissingDigitSet(int base, std::vector<int> allowed, AffineMap frame = {});

  int base() const { return base_; }
  const std::vector<int>& allowed() const { return allowed_; }
  const AffineMap& frame() const { return frame_; }
  bool is_contiguous() const;

  // Convex hull of the attractor (after the frame).
  Interval hull() const;
  // Length of the largest bounded gap of the attractor (after the frame).
  Rational largest_gap() const;
  // S = C/(C+1) for contiguous digit sets; std::nullopt otherwise.
  std::optional<Rational> closed_form_normalized_thickness() const;

  MissingDigitSet with_frame(const AffineMap& frame) const { return {base_, allowed_, frame}; }

 private:
  int base_;
  std::vector<int> allowed_;
  AffineMap frame_;
};

// Union of exact cylinder hulls over all allowed words of the given length.
IntervalUnion approx(const MissingDigitSet& set, int depth);

std::vector<Gap> gaps(const IntervalUnion& u);
// Length of the largest bounded gap, zero for a single interval.
Rational largest_gap(const IntervalUnion& u);

enum class Exactness { exact, estimate };

struct ThicknessReport {
  Rational C;
  Rational S;
  Gap witness_gap;
  std::optional<int> depth;
  Exactness exactness = Exactness::estimate;
};

// Thickness of the finite union, with the hull ends standing in for the two
// unbounded gaps.
ThicknessReport thickness(const IntervalUnion& u, std::optional<int> depth = std::nullopt,
                          Exactness exactness = Exactness::estimate);
// approx + thickness; flagged exact for contiguous digit sets at depth >= 2.
ThicknessReport thickness(const MissingDigitSet& set, int depth);

IntervalUnion affine_image(const IntervalUnion& u, const Rational& scale, const Rational& shift);
IntervalUnion power_image(const IntervalUnion& u, int k);

struct KPowerBounds {
  Rational C_lower;  // 1 / (2^k - 1)
  Rational c_k;      // (1.5^k - 1) / (2^k - 1.5^k)
  Rational S_exact;  // 1 / 2^k
};
KPowerBounds kpower_bounds(int k);

IntervalUnion sumset(const IntervalUnion& a, const IntervalUnion& b);
bool is_interval(const IntervalUnion& u);

}  // namespace cantor

#pragma once

// Checkable certificates for the gap-lemma intersection rule, the Astels sum
// rule, plane slices of triple products, and the region D inequality system.
//
// A certificate lists every inequality it evaluated together with both sides,
// so that the verdict can be recomputed from the echoed inputs alone.

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "cantor/interval_union.hpp"

namespace cantor {

enum class Rule { NewhouseIntersect, AstelsSumInterval, SliceNonempty, RegionD };

std::string to_string(Rule rule);
Rule parse_rule(std::string_view text);

// lhs >= rhs, or lhs > rhs when strict.
struct Check {
  std::string name;
  Rational lhs;
  Rational rhs;
  bool strict = false;
  bool holds = false;

  Rational slack() const { return lhs - rhs; }
  bool operator==(const Check&) const = default;
};

struct Certificate {
  Rule rule = Rule::RegionD;
  std::vector<std::pair<std::string, std::string>> inputs;
  std::vector<Check> checks;
  bool verdict = false;
  Rational margin = 0;
  // Set when the summaries fed in were finite-depth estimates.
  bool conditional = false;
  // Set when the rule does not apply to the inputs; verdict is then false.
  std::optional<std::string> refusal;

  std::optional<std::string> input(std::string_view key) const;
  // The check with the smallest slack, if any.
  const Check* binding() const;
  bool operator==(const Certificate&) const = default;
};

// Summary of one Cantor set as consumed by the rules.
struct SetSummary {
  Rational S;
  Interval hull;
  std::vector<Gap> gaps;
};

Certificate newhouse_intersect(const SetSummary& a, const SetSummary& b, bool exact_inputs = true);

struct AstelsTerm {
  Rational S;
  Rational hull_length;
  Rational max_gap;
};

Certificate astels_sum(const std::vector<AstelsTerm>& terms, bool exact_inputs = true);

struct SliceTerm {
  Rational S;
  Interval hull;
  Rational max_gap;
};

// Plane {x : v . x = a} against A_1 x A_2 x A_3. Coordinates of v equal to
// zero make the rule inapplicable and produce a refusal.
Certificate slice_nonempty(const std::vector<SliceTerm>& terms, const std::vector<Rational>& v, const Rational& a,
                           bool exact_inputs = true);

Certificate region_D(const Rational& k1, const Rational& k2);

// The constraints of D as affine forms c0 + c1 k1 + c2 k2 >= 0 (valid for k2 > 0).
struct LinearConstraint {
  std::string name;
  Rational c0, c1, c2;

  Rational eval(const Rational& k1, const Rational& k2) const { return c0 + c1 * k1 + c2 * k2; }
};
const std::vector<LinearConstraint>& region_D_constraints();
// The slice conditions alone, without the box [1,4] x [1,5].
const std::vector<LinearConstraint>& slice_condition_constraints();

enum class BoxClass { inside, outside, uncertain };
std::string to_string(BoxClass c);

// Exact classification of an axis-aligned box against the convex region D.
BoxClass classify_region_D_box(const Interval& k1, const Interval& k2);

// Vertices (counter-clockwise) of the polygon cut out by the constraints,
// starting from a bounding box.
std::vector<std::pair<Rational, Rational>> constraint_polygon(const std::vector<LinearConstraint>& constraints,
                                                             const Interval& k1_box, const Interval& k2_box);

// Canonical key-value text block and its parser.
std::string serialize(const Certificate& cert);
Certificate parse_certificate(std::string_view text);

// Rebuilds the certificate from its echoed inputs and compares.
bool revalidate(const Certificate& cert);

}  // namespace cantor

#include "cantor/certify.hpp"

#include <algorithm>
#include <sstream>

#include "cantor/errors.hpp"

namespace cantor {

namespace {

using boost::multiprecision::abs;

Check make_check(std::string name, Rational lhs, Rational rhs, bool strict = false) {
  Check c{std::move(name), std::move(lhs), std::move(rhs), strict, false};
  c.holds = strict ? c.lhs > c.rhs : c.lhs >= c.rhs;
  return c;
}

void finish(Certificate& cert, Rational margin) {
  cert.verdict = !cert.refusal && std::all_of(cert.checks.begin(), cert.checks.end(),
                                              [](const Check& c) { return c.holds; });
  cert.margin = std::move(margin);
}

Rational min_slack(const std::vector<Check>& checks) {
  Rational m = checks.front().slack();
  for (const auto& c : checks) m = std::min(m, c.slack());
  return m;
}

std::string join(const std::vector<Rational>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ',';
    out += to_string(values[i]);
  }
  return out;
}

std::string interval_text(const Rational& lo, const Rational& hi) { return to_string(lo) + ' ' + to_string(hi); }

template <typename T>
std::string interval_list(const std::vector<T>& items) {
  std::string out;
  for (std::size_t i = 0; i < items.size(); ++i) {
    if (i) out += ';';
    out += interval_text(items[i].lo, items[i].hi);
  }
  return out;
}

std::vector<std::string> split(std::string_view text, char sep) {
  std::vector<std::string> out;
  if (text.empty()) return out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = text.find(sep, start);
    out.emplace_back(text.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::string trim(std::string_view s) {
  std::size_t a = s.find_first_not_of(" \t\r");
  if (a == std::string_view::npos) return {};
  std::size_t b = s.find_last_not_of(" \t\r");
  return std::string(s.substr(a, b - a + 1));
}

std::vector<Rational> parse_list(std::string_view text) {
  std::vector<Rational> out;
  for (const auto& item : split(text, ',')) out.push_back(parse_rational(trim(item)));
  return out;
}

std::pair<Rational, Rational> parse_pair(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string a, b, extra;
  if (!(in >> a >> b) || (in >> extra)) throw DomainError("malformed interval '" + std::string(text) + "'");
  return {parse_rational(a), parse_rational(b)};
}

std::vector<Gap> parse_gaps(std::string_view text) {
  std::vector<Gap> out;
  for (const auto& item : split(text, ';')) {
    auto [lo, hi] = parse_pair(item);
    out.push_back({lo, hi});
  }
  return out;
}

void check_S(const Rational& S) {
  if (S < 0 || S >= 1) throw DomainError("normalized thickness must lie in [0, 1), got " + to_string(S));
}

// Smallest value over the gaps g of max(g.lo - hull.lo, hull.hi - g.hi); it is
// negative exactly when the hull sits inside some open gap.
Rational hull_vs_gaps(const Interval& hull, const std::vector<Gap>& gaps) {
  Rational worst = std::max<Rational>(gaps.front().lo - hull.lo, hull.hi - gaps.front().hi);
  for (const auto& g : gaps) worst = std::min(worst, std::max<Rational>(g.lo - hull.lo, hull.hi - g.hi));
  return worst;
}

const char* bool_text(bool b) { return b ? "true" : "false"; }

bool parse_bool(std::string_view s) {
  if (s == "true") return true;
  if (s == "false") return false;
  throw DomainError("expected true or false, got '" + std::string(s) + "'");
}

std::vector<LinearConstraint> slice_rows() {
  return {
      {"1/2 + k1/3 - k2/5 >= 0", make_rational(1, 2), make_rational(1, 3), make_rational(-1, 5)},
      {"1/3 + k1/4 - k2/4 <= 0", make_rational(-1, 3), make_rational(-1, 4), make_rational(1, 4)},
      {"k1 >= 2/3", make_rational(-2, 3), 1, 0},
      {"k1 <= 4", 4, -1, 0},
      {"k2 >= 10/9", make_rational(-10, 9), 0, 1},
      {"k2 <= 50/9", make_rational(50, 9), 0, -1},
      {"k1/k2 >= 9/25", 0, 25, -9},
      {"k1/k2 <= 6/5", 0, -5, 6},
  };
}

}  // namespace

std::string to_string(Rule rule) {
  switch (rule) {
    case Rule::NewhouseIntersect: return "NewhouseIntersect";
    case Rule::AstelsSumInterval: return "AstelsSumInterval";
    case Rule::SliceNonempty: return "SliceNonempty";
    case Rule::RegionD: return "RegionD";
  }
  return "?";
}

Rule parse_rule(std::string_view text) {
  for (Rule r : {Rule::NewhouseIntersect, Rule::AstelsSumInterval, Rule::SliceNonempty, Rule::RegionD}) {
    if (to_string(r) == text) return r;
  }
  throw DomainError("unknown rule '" + std::string(text) + "'");
}

std::optional<std::string> Certificate::input(std::string_view key) const {
  for (const auto& [k, v] : inputs) {
    if (k == key) return v;
  }
  return std::nullopt;
}

const Check* Certificate::binding() const {
  const Check* best = nullptr;
  for (const auto& c : checks) {
    if (!best || c.slack() < best->slack()) best = &c;
  }
  return best;
}

Certificate newhouse_intersect(const SetSummary& a, const SetSummary& b, bool exact_inputs) {
  check_S(a.S);
  check_S(b.S);
  Certificate cert;
  cert.rule = Rule::NewhouseIntersect;
  cert.conditional = !exact_inputs;
  cert.inputs = {{"S_A", to_string(a.S)},
                 {"S_B", to_string(b.S)},
                 {"hull_A", interval_text(a.hull.lo, a.hull.hi)},
                 {"hull_B", interval_text(b.hull.lo, b.hull.hi)},
                 {"gaps_A", interval_list(a.gaps)},
                 {"gaps_B", interval_list(b.gaps)},
                 {"exact_inputs", bool_text(exact_inputs)}};
  cert.checks.push_back(make_check("S_A + S_B >= 1", a.S + b.S, 1));
  cert.checks.push_back(make_check("hulls overlap", std::min(a.hull.hi, b.hull.hi) - std::max(a.hull.lo, b.hull.lo), 0));
  if (!b.gaps.empty()) cert.checks.push_back(make_check("hull_A not inside a gap of B", hull_vs_gaps(a.hull, b.gaps), 0));
  if (!a.gaps.empty()) cert.checks.push_back(make_check("hull_B not inside a gap of A", hull_vs_gaps(b.hull, a.gaps), 0));
  finish(cert, a.S + b.S - 1);
  return cert;
}

Certificate astels_sum(const std::vector<AstelsTerm>& terms, bool exact_inputs) {
  if (terms.size() < 2) throw DomainError("astels_sum needs at least two sets");
  std::vector<Rational> S, hulls, gaps;
  for (const auto& t : terms) {
    check_S(t.S);
    if (t.hull_length <= 0) throw DomainError("hull lengths must be positive");
    if (t.max_gap < 0) throw DomainError("gap lengths must be nonnegative");
    S.push_back(t.S);
    hulls.push_back(t.hull_length);
    gaps.push_back(t.max_gap);
  }
  Certificate cert;
  cert.rule = Rule::AstelsSumInterval;
  cert.conditional = !exact_inputs;
  cert.inputs = {{"S", join(S)},
                 {"hull_lengths", join(hulls)},
                 {"max_gaps", join(gaps)},
                 {"exact_inputs", bool_text(exact_inputs)}};
  Rational sum = 0;
  for (const auto& s : S) sum += s;
  cert.checks.push_back(make_check("sum S >= 1", sum, 1));
  cert.checks.push_back(
      make_check("min hull > max gap", *std::min_element(hulls.begin(), hulls.end()), *std::max_element(gaps.begin(), gaps.end()), true));
  finish(cert, min_slack(cert.checks));
  return cert;
}

Certificate slice_nonempty(const std::vector<SliceTerm>& terms, const std::vector<Rational>& v, const Rational& a,
                           bool exact_inputs) {
  if (terms.size() < 2) throw DomainError("slice_nonempty needs at least two sets");
  if (v.size() != terms.size()) throw DomainError("direction vector length must match the number of sets");
  std::vector<Rational> S, gaps;
  std::vector<Interval> hulls;
  for (const auto& t : terms) {
    check_S(t.S);
    if (t.hull.hi <= t.hull.lo) throw DomainError("hulls must have positive length");
    if (t.max_gap < 0) throw DomainError("gap lengths must be nonnegative");
    S.push_back(t.S);
    hulls.push_back(t.hull);
    gaps.push_back(t.max_gap);
  }
  Certificate cert;
  cert.rule = Rule::SliceNonempty;
  cert.conditional = !exact_inputs;
  cert.inputs = {{"S", join(S)},
                 {"hulls", interval_list(hulls)},
                 {"max_gaps", join(gaps)},
                 {"v", join(v)},
                 {"a", to_string(a)},
                 {"exact_inputs", bool_text(exact_inputs)}};
  if (std::all_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; })) {
    throw DomainError("direction vector must be nonzero");
  }
  if (std::any_of(v.begin(), v.end(), [](const Rational& x) { return x == 0; })) {
    cert.refusal = "direction has a zero coordinate; the slice reduces to fewer sets";
    finish(cert, 0);
    return cert;
  }
  // v_i A_i has the same normalized thickness, hull and gaps scaled by |v_i|
  Rational sum = 0, min_hull, max_gap, lo = 0, hi = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    const Rational scale = abs(v[i]);
    sum += S[i];
    Rational h = scale * hulls[i].length();
    Rational g = scale * gaps[i];
    if (i == 0 || h < min_hull) min_hull = h;
    if (i == 0 || g > max_gap) max_gap = g;
    Rational p = v[i] * hulls[i].lo, q = v[i] * hulls[i].hi;
    lo += std::min(p, q);
    hi += std::max(p, q);
  }
  cert.checks.push_back(make_check("sum S >= 1", sum, 1));
  cert.checks.push_back(make_check("min scaled hull > max scaled gap", min_hull, max_gap, true));
  cert.checks.push_back(make_check("a >= min of v.x over hull box", a, lo));
  cert.checks.push_back(make_check("max of v.x over hull box >= a", hi, a));
  finish(cert, min_slack(cert.checks));
  return cert;
}

const std::vector<LinearConstraint>& slice_condition_constraints() {
  static const std::vector<LinearConstraint> rows = slice_rows();
  return rows;
}

const std::vector<LinearConstraint>& region_D_constraints() {
  static const std::vector<LinearConstraint> rows = [] {
    auto r = slice_rows();
    r.push_back({"k1 >= 1", -1, 1, 0});
    r.push_back({"k2 >= 1", -1, 0, 1});
    r.push_back({"k2 <= 5", 5, 0, -1});
    return r;
  }();
  return rows;
}

Certificate region_D(const Rational& k1, const Rational& k2) {
  if (k1 <= 0 || k2 <= 0) throw DomainError("region_D requires k1, k2 > 0");
  Certificate cert;
  cert.rule = Rule::RegionD;
  cert.inputs = {{"k1", to_string(k1)}, {"k2", to_string(k2)}};
  for (const auto& row : region_D_constraints()) cert.checks.push_back(make_check(row.name, row.eval(k1, k2), 0));
  finish(cert, min_slack(cert.checks));
  return cert;
}

std::string to_string(BoxClass c) {
  switch (c) {
    case BoxClass::inside: return "inside";
    case BoxClass::outside: return "outside";
    case BoxClass::uncertain: return "uncertain";
  }
  return "?";
}

BoxClass classify_region_D_box(const Interval& k1, const Interval& k2) {
  const Rational xs[2] = {k1.lo, k1.hi};
  const Rational ys[2] = {k2.lo, k2.hi};
  bool all_inside = true;
  for (const auto& row : region_D_constraints()) {
    int passing = 0;
    for (const auto& x : xs) {
      for (const auto& y : ys) passing += row.eval(x, y) >= 0 ? 1 : 0;
    }
    if (passing == 0) return BoxClass::outside;
    if (passing < 4) all_inside = false;
  }
  return all_inside ? BoxClass::inside : BoxClass::uncertain;
}

std::vector<std::pair<Rational, Rational>> constraint_polygon(const std::vector<LinearConstraint>& constraints,
                                                             const Interval& k1_box, const Interval& k2_box) {
  using Point = std::pair<Rational, Rational>;
  std::vector<Point> poly = {{k1_box.lo, k2_box.lo}, {k1_box.hi, k2_box.lo}, {k1_box.hi, k2_box.hi}, {k1_box.lo, k2_box.hi}};
  for (const auto& row : constraints) {
    std::vector<Point> next;
    for (std::size_t i = 0; i < poly.size(); ++i) {
      const Point& p = poly[i];
      const Point& q = poly[(i + 1) % poly.size()];
      Rational fp = row.eval(p.first, p.second), fq = row.eval(q.first, q.second);
      if (fp >= 0) next.push_back(p);
      if ((fp >= 0) != (fq >= 0) && fp != 0 && fq != 0) {
        Rational t = fp / (fp - fq);
        next.push_back({p.first + t * (q.first - p.first), p.second + t * (q.second - p.second)});
      }
    }
    poly.clear();
    for (auto& p : next) {
      if (poly.empty() || poly.back() != p) poly.push_back(std::move(p));
    }
    if (poly.size() > 1 && poly.front() == poly.back()) poly.pop_back();
    if (poly.empty()) break;
  }
  return poly;
}

std::string serialize(const Certificate& cert) {
  std::ostringstream out;
  out << "rule: " << to_string(cert.rule) << '\n';
  for (const auto& [k, v] : cert.inputs) out << "input " << k << ": " << v << '\n';
  for (const auto& c : cert.checks) {
    out << "check: " << c.name << " | " << to_string(c.lhs) << " | " << (c.strict ? ">" : ">=") << " | "
        << to_string(c.rhs) << " | " << (c.holds ? "holds" : "fails") << '\n';
  }
  out << "verdict: " << bool_text(cert.verdict) << '\n';
  out << "margin: " << to_string(cert.margin) << '\n';
  out << "conditional: " << bool_text(cert.conditional) << '\n';
  if (cert.refusal) out << "refusal: " << *cert.refusal << '\n';
  return out.str();
}

Certificate parse_certificate(std::string_view text) {
  Certificate cert;
  bool have_rule = false, have_verdict = false, have_margin = false;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    auto colon = line.find(": ");
    std::string key = colon == std::string::npos ? trim(line.substr(0, line.size() - 1)) : line.substr(0, colon);
    std::string value = colon == std::string::npos ? std::string() : line.substr(colon + 2);
    if (colon == std::string::npos && (line.empty() || line.back() != ':')) {
      throw DomainError("malformed certificate line '" + line + "'");
    }
    if (key == "rule") {
      cert.rule = parse_rule(trim(value));
      have_rule = true;
    } else if (key.rfind("input ", 0) == 0) {
      cert.inputs.emplace_back(key.substr(6), value);
    } else if (key == "check") {
      auto fields = split(value, '|');
      if (fields.size() != 5) throw DomainError("malformed check line '" + line + "'");
      Check c;
      c.name = trim(fields[0]);
      c.lhs = parse_rational(trim(fields[1]));
      std::string op = trim(fields[2]);
      if (op != ">" && op != ">=") throw DomainError("unknown relation '" + op + "'");
      c.strict = op == ">";
      c.rhs = parse_rational(trim(fields[3]));
      std::string status = trim(fields[4]);
      if (status != "holds" && status != "fails") throw DomainError("unknown check status '" + status + "'");
      c.holds = status == "holds";
      cert.checks.push_back(std::move(c));
    } else if (key == "verdict") {
      cert.verdict = parse_bool(trim(value));
      have_verdict = true;
    } else if (key == "margin") {
      cert.margin = parse_rational(trim(value));
      have_margin = true;
    } else if (key == "conditional") {
      cert.conditional = parse_bool(trim(value));
    } else if (key == "refusal") {
      cert.refusal = value;
    } else {
      throw DomainError("unknown certificate key '" + key + "'");
    }
  }
  if (!have_rule || !have_verdict || !have_margin) throw DomainError("certificate is missing rule, verdict or margin");
  return cert;
}

bool revalidate(const Certificate& cert) {
  auto need = [&cert](const char* key) {
    auto v = cert.input(key);
    if (!v) throw DomainError(std::string("certificate lacks input '") + key + "'");
    return *v;
  };
  // each check must be internally consistent before anything else
  for (const auto& c : cert.checks) {
    if (c.holds != (c.strict ? c.lhs > c.rhs : c.lhs >= c.rhs)) return false;
  }
  try {
    Certificate rebuilt;
    switch (cert.rule) {
      case Rule::NewhouseIntersect: {
        auto ha = parse_pair(need("hull_A"));
        auto hb = parse_pair(need("hull_B"));
        SetSummary a{parse_rational(need("S_A")), {ha.first, ha.second}, parse_gaps(need("gaps_A"))};
        SetSummary b{parse_rational(need("S_B")), {hb.first, hb.second}, parse_gaps(need("gaps_B"))};
        rebuilt = newhouse_intersect(a, b, parse_bool(need("exact_inputs")));
        break;
      }
      case Rule::AstelsSumInterval: {
        auto S = parse_list(need("S"));
        auto h = parse_list(need("hull_lengths"));
        auto g = parse_list(need("max_gaps"));
        if (S.size() != h.size() || S.size() != g.size()) return false;
        std::vector<AstelsTerm> terms;
        for (std::size_t i = 0; i < S.size(); ++i) terms.push_back({S[i], h[i], g[i]});
        rebuilt = astels_sum(terms, parse_bool(need("exact_inputs")));
        break;
      }
      case Rule::SliceNonempty: {
        auto S = parse_list(need("S"));
        auto hulls = parse_gaps(need("hulls"));
        auto g = parse_list(need("max_gaps"));
        if (S.size() != hulls.size() || S.size() != g.size()) return false;
        std::vector<SliceTerm> terms;
        for (std::size_t i = 0; i < S.size(); ++i) terms.push_back({S[i], {hulls[i].lo, hulls[i].hi}, g[i]});
        rebuilt = slice_nonempty(terms, parse_list(need("v")), parse_rational(need("a")), parse_bool(need("exact_inputs")));
        break;
      }
      case Rule::RegionD:
        rebuilt = region_D(parse_rational(need("k1")), parse_rational(need("k2")));
        break;
    }
    return rebuilt == cert;
  } catch (const DomainError&) {
    return false;
  }
}

}  // namespace cantor

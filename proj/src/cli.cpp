#include "cantor/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cantor/certify.hpp"
#include "cantor/digits.hpp"
#include "cantor/errors.hpp"
#include "cantor/fractal.hpp"
#include "cantor/io.hpp"
#include "cantor/orbit.hpp"
#include "cantor/restricted.hpp"
#include "cantor/witness.hpp"

namespace cantor::cli {

namespace {

using nlohmann::ordered_json;

enum class Format { csv, json, text, svg };

Format parse_format(const std::string& s) {
  if (s == "csv") return Format::csv;
  if (s == "json") return Format::json;
  if (s == "text") return Format::text;
  if (s == "svg") return Format::svg;
  throw DomainError("unknown format '" + s + "'");
}

// Summary fields plus an optional table of rows.
struct Output {
  ordered_json summary = ordered_json::object();
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

std::string plain(const ordered_json& v) { return v.is_string() ? v.get<std::string>() : v.dump(); }

void emit(const Output& o, Format f, std::ostream& out) {
  switch (f) {
    case Format::csv:
      if (!o.header.empty()) {
        write_csv_row(out, o.header);
        for (const auto& r : o.rows) write_csv_row(out, r);
      } else {
        write_csv_row(out, {"key", "value"});
        for (const auto& [k, v] : o.summary.items()) write_csv_row(out, {k, plain(v)});
      }
      break;
    case Format::json: {
      ordered_json doc = o.summary;
      if (!o.header.empty()) {
        ordered_json rows = ordered_json::array();
        for (const auto& r : o.rows) {
          ordered_json row = ordered_json::object();
          for (std::size_t i = 0; i < o.header.size(); ++i) row[o.header[i]] = r[i];
          rows.push_back(std::move(row));
        }
        doc["rows"] = std::move(rows);
      }
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::text:
      for (const auto& [k, v] : o.summary.items()) out << k << ": " << plain(v) << '\n';
      if (!o.header.empty()) {
        write_csv_row(out, o.header);
        for (const auto& r : o.rows) write_csv_row(out, r);
      }
      break;
    case Format::svg: throw DomainError("svg output is only available for the region command");
  }
}

std::string decimal(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::vector<std::string> split_any(const std::string& text, const std::string& seps) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (seps.find(c) != std::string::npos) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  out.push_back(cur);
  return out;
}

std::vector<int> parse_bases(const std::string& text) {
  std::vector<int> out;
  for (const auto& s : split_any(text, ";,")) {
    if (s.empty()) throw DomainError("empty base in '" + text + "'");
    Integer b = floor_of(parse_rational(s));
    if (Rational(b) != parse_rational(s) || b < 2 || b > kMaxBase) throw DomainError("invalid base '" + s + "'");
    out.push_back(static_cast<int>(b));
  }
  return out;
}

std::vector<Rational> parse_rationals(const std::string& text) {
  std::vector<Rational> out;
  for (const auto& s : split_any(text, ",")) out.push_back(parse_rational(s));
  return out;
}

std::vector<DigitSetSpec> parse_specs(const std::string& bases_text, const std::string& sets_text) {
  auto bases = parse_bases(bases_text);
  auto sets = split_any(sets_text, ";");
  if (sets.size() != bases.size()) {
    throw DomainError("--bases lists " + std::to_string(bases.size()) + " bases but --digit-sets lists " +
                      std::to_string(sets.size()) + " digit sets");
  }
  std::vector<DigitSetSpec> specs;
  for (std::size_t i = 0; i < bases.size(); ++i) specs.emplace_back(bases[i], parse_digit_list(sets[i]));
  return specs;
}

std::string digit_list(const std::vector<int>& d) {
  std::string s;
  for (std::size_t i = 0; i < d.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(d[i]);
  }
  return s;
}

ordered_json interval_json(const Interval& iv) { return ordered_json::array({to_string(iv.lo), to_string(iv.hi)}); }

void add_union_rows(Output& o, const IntervalUnion& u) {
  o.header = {"lo", "hi"};
  for (std::size_t i = 0; i < u.size(); ++i) o.rows.push_back({to_string(u.lo(i)), to_string(u.hi(i))});
}

Output certificate_output(const Certificate& c) {
  Output o;
  o.summary["rule"] = to_string(c.rule);
  ordered_json inputs = ordered_json::object();
  for (const auto& [k, v] : c.inputs) inputs[k] = v;
  o.summary["inputs"] = inputs;
  o.summary["verdict"] = c.verdict;
  o.summary["margin"] = to_string(c.margin);
  o.summary["conditional"] = c.conditional;
  if (c.refusal) o.summary["refusal"] = *c.refusal;
  o.header = {"check", "lhs", "relation", "rhs", "holds", "slack"};
  for (const auto& ch : c.checks) {
    o.rows.push_back({ch.name, to_string(ch.lhs), ch.strict ? ">" : ">=", to_string(ch.rhs), ch.holds ? "true" : "false",
                      to_string(ch.slack())});
  }
  return o;
}

struct Options {
  std::string format;
  int precision_bits = 128;
  int depth = 8;

  std::string n_text, bases, digit_sets, digits;
  int base = 0;
  std::uint64_t limit = 0, p = 0, q = 0, n = 0, k_max = 100000, bound = 1000000;
  std::uint64_t budget = kDefaultDensityBudget;
  bool oracle = false, difference = false;
  std::string k1, k2, rule, S, hull_lengths, hulls, max_gaps, v, a, shift, scale = "1";
  int resolution = 64;
  double tolerance = 1e-20;
  std::string linear;
  int k = 2, terms = 4;
  std::string target;
  std::uint64_t block_n = 0;
  std::string delta = "1/100";
  int block_depth = 3;
};

class Runner {
 public:
  Runner(std::ostream& out) : out_(out) {}

  void register_commands(CLI::App& app) {
    app.fallthrough();
    app.add_option("--format", o_.format, "csv, json, text or svg")
        ->check(CLI::IsMember({"csv", "json", "text", "svg"}));
    app.add_option("--precision-bits", o_.precision_bits, "working precision in bits (default 128)")
        ->check(CLI::Range(16, 1 << 16));
    app.add_option("--depth", o_.depth, "approximation depth (default 8)")->check(CLI::Range(0, 64));

    auto* c = app.add_subcommand("digits", "base-b digits of n, optionally tested against a digit set");
    c->add_option("--n", o_.n_text, "nonnegative integer")->required();
    c->add_option("--base", o_.base, "base >= 2")->required();
    c->add_option("--digits", o_.digits, "allowed digits, comma separated");
    bind(c, [this] { cmd_digits(); });

    c = app.add_subcommand("kummer", "does the odd prime p divide binom(2n, n)?");
    c->add_option("--p", o_.p)->required();
    c->add_option("--n", o_.n)->required();
    c->add_flag("--oracle", o_.oracle, "cross-check with exact binomial arithmetic");
    bind(c, [this] { cmd_kummer(); });

    c = app.add_subcommand("enumerate", "members of the restricted-digit set up to --limit");
    add_specs(c);
    c->add_option("--limit", o_.limit)->required();
    bind(c, [this] { cmd_enumerate(); });

    c = app.add_subcommand("growth", "counting diagnostics for the restricted-digit set");
    add_specs(c);
    c->add_option("--limit", o_.limit)->required();
    bind(c, [this] { cmd_growth(); });

    c = app.add_subcommand("thickness", "thickness of a missing-digit Cantor set at finite depth");
    c->add_option("--base", o_.base)->required();
    c->add_option("--digits", o_.digits)->required();
    c->add_option("--scale", o_.scale, "affine frame scale (default 1)");
    c->add_option("--shift", o_.shift, "affine frame shift (default 0)");
    bind(c, [this] { cmd_thickness(); });

    c = app.add_subcommand("sumset", "sum (or difference) of two missing-digit sets at finite depth");
    add_specs(c);
    c->add_flag("--difference", o_.difference, "use A - B instead of A + B");
    bind(c, [this] { cmd_sumset(); });

    c = app.add_subcommand("certify", "gap-lemma, sum-interval and slice certificates");
    c->add_option("--rule", o_.rule)->required()->check(CLI::IsMember({"astels", "newhouse", "slice"}));
    c->add_option("--S", o_.S, "normalized thicknesses, comma separated");
    c->add_option("--hull-lengths", o_.hull_lengths);
    c->add_option("--hulls", o_.hulls, "'lo hi;lo hi;...'");
    c->add_option("--max-gaps", o_.max_gaps);
    c->add_option("--v", o_.v, "plane normal, comma separated");
    c->add_option("--a", o_.a, "plane offset");
    c->add_option("--shift", o_.shift, "shift applied to the second set (newhouse)");
    add_specs(c);
    bind(c, [this] { cmd_certify(); });

    c = app.add_subcommand("region", "membership of (k1, k2) in region D, or the region figure as SVG");
    c->add_option("--k1", o_.k1);
    c->add_option("--k2", o_.k2);
    c->add_option("--resolution", o_.resolution, "SVG sampling grid (>= 16)");
    bind(c, [this] { cmd_region(); });

    c = app.add_subcommand("orbit", "orbit of ({k log3/log4}, {k log3/log5}) hitting Log(D)");
    c->add_option("--k-max", o_.k_max);
    c->add_option("--tolerance", o_.tolerance);
    c->add_option("--linear-form", o_.linear, "'l1,l2': evaluate l1 log3/log4 + l2 log3/log5 instead");
    bind(c, [this] { cmd_orbit(); });

    c = app.add_subcommand("triples", "x + y = z with restricted digits");
    c->add_option("--limit", o_.limit)->required();
    c->add_option("--bases", o_.bases, "three bases (default 3;4;5)");
    c->add_option("--digit-sets", o_.digit_sets, "three digit sets (default 0,1;0,1;0,1)");
    bind(c, [this] { cmd_triples(); });

    c = app.add_subcommand("graham", "n <= limit with binom(2n, n) coprime to 105");
    c->add_option("--limit", o_.limit)->required();
    bind(c, [this] { cmd_graham(); });

    c = app.add_subcommand("density", "exponent windows [p^k, p^(k+1)) meeting N_{p,q}");
    c->add_option("--p", o_.p)->required();
    c->add_option("--q", o_.q)->required();
    c->add_option("--n", o_.n, "number of exponents")->required();
    c->add_option("--budget", o_.budget);
    bind(c, [this] { cmd_density(); });

    c = app.add_subcommand("nonzero", "integers whose expansions in all bases avoid the digit 0");
    c->add_option("--bases", o_.bases)->required();
    c->add_option("--limit", o_.limit);
    c->add_option("--block-n", o_.block_n, "run the rescaled block intersection at exponent n instead");
    c->add_option("--delta", o_.delta, "frame tolerance delta' for --block-n (default 1/100)");
    c->add_option("--block-depth", o_.block_depth, "approximation depth for --block-n (default 3)");
    bind(c, [this] { cmd_nonzero(); });

    c = app.add_subcommand("waring", "sums of k-th powers of the middle-third Cantor set");
    c->add_option("--k", o_.k);
    c->add_option("--terms", o_.terms);
    c->add_option("--target", o_.target, "'lo hi' (default [0, terms])");
    bind(c, [this] { cmd_waring(); });

    c = app.add_subcommand("independence", "search for multiplicative relations among bases");
    c->add_option("--bases", o_.bases)->required();
    c->add_option("--bound", o_.bound);
    bind(c, [this] { cmd_independence(); });

    app.require_subcommand(1, 1);
  }

  void run_selected() {
    if (!action_) throw DomainError("no subcommand selected");
    action_();
  }

 private:
  void bind(CLI::App* c, std::function<void()> f) {
    c->callback([this, f] { action_ = f; });
  }

  void add_specs(CLI::App* c) {
    c->add_option("--bases", o_.bases, "semicolon-separated bases, e.g. '3;5'");
    c->add_option("--digit-sets", o_.digit_sets, "semicolon-separated digit lists, e.g. '0,1;0,1,2'");
    c->add_option("--base", o_.base, "single base (alternative to --bases)");
    c->add_option("--digits", o_.digits, "single digit list (alternative to --digit-sets)");
  }

  std::vector<DigitSetSpec> specs() const {
    if (!o_.bases.empty()) {
      if (o_.digit_sets.empty()) throw DomainError("--bases requires --digit-sets");
      return parse_specs(o_.bases, o_.digit_sets);
    }
    if (o_.base == 0 || o_.digits.empty()) throw DomainError("give --bases/--digit-sets or --base/--digits");
    return {DigitSetSpec(o_.base, parse_digit_list(o_.digits))};
  }

  Format format(Format fallback) const { return o_.format.empty() ? fallback : parse_format(o_.format); }

  void cmd_digits() {
    Rational value = parse_rational(o_.n_text);
    if (denominator_of(value) != 1 || value < 0) throw DomainError("--n must be a nonnegative integer");
    Integer n = numerator_of(value);
    DigitExpansion d = digits_of(n, o_.base);
    Output o;
    o.summary["n"] = n.str();
    o.summary["base"] = o_.base;
    o.summary["digits"] = d.to_string();
    if (!o_.digits.empty()) o.summary["uses_only"] = uses_only(n, DigitSetSpec(o_.base, parse_digit_list(o_.digits)));
    emit(o, format(Format::text), out_);
  }

  void cmd_kummer() {
    Output o;
    const bool divides = kummer_divides(o_.p, o_.n);
    o.summary["p"] = o_.p;
    o.summary["n"] = o_.n;
    o.summary["digits"] = digits_of(o_.n, static_cast<int>(o_.p)).to_string();
    o.summary["divides"] = divides;
    if (o_.oracle) {
      Integer g = binom_gcd_oracle(o_.n, Integer(o_.p));
      o.summary["oracle_gcd"] = g.str();
      o.summary["agrees"] = divides == (g == o_.p);
    }
    emit(o, format(Format::text), out_);
  }

  void cmd_enumerate() {
    MultiBaseSpec spec(specs());
    Format f = format(Format::csv);
    if (f == Format::csv) {
      out_ << "n\n";
      for_each_member(spec, o_.limit, [this](std::uint64_t n) {
        out_ << n << '\n';
        return true;
      });
      return;
    }
    Output o;
    ordered_json sets = ordered_json::array();
    for (const auto& s : spec.specs()) sets.push_back(s.to_string());
    o.summary["digit_sets"] = sets;
    o.summary["limit"] = o_.limit;
    auto members = enumerate(spec, o_.limit);
    o.summary["count"] = members.size();
    o.header = {"n"};
    for (auto m : members) o.rows.push_back({std::to_string(m)});
    emit(o, f, out_);
  }

  void cmd_growth() {
    MultiBaseSpec spec(specs());
    GrowthReport r = growth_report(spec, o_.limit);
    Output o;
    o.summary["N"] = r.N;
    o.summary["count"] = r.count;
    o.summary["s"] = r.s;
    o.summary["s_error"] = r.s_error;
    o.summary["predicted_exponent"] = r.predicted_exponent;
    if (r.empirical_exponent) {
      o.summary["empirical_exponent"] = *r.empirical_exponent;
    } else {
      o.summary["empirical_exponent"] = nullptr;
    }
    o.summary["note"] = "diagnostic only; the predicted exponent is conjectural";
    emit(o, format(Format::text), out_);
  }

  void cmd_thickness() {
    AffineMap frame{parse_rational(o_.scale), o_.shift.empty() ? Rational(0) : parse_rational(o_.shift)};
    MissingDigitSet set(o_.base, parse_digit_list(o_.digits), frame);
    ThicknessReport r = thickness(set, o_.depth);
    Output o;
    o.summary["base"] = o_.base;
    o.summary["digits"] = digit_list(set.allowed());
    o.summary["depth"] = o_.depth;
    o.summary["C"] = to_string(r.C);
    o.summary["S"] = to_string(r.S);
    o.summary["exactness"] = r.exactness == Exactness::exact ? "exact" : "estimate";
    o.summary["witness_gap"] = interval_json({r.witness_gap.lo, r.witness_gap.hi});
    if (auto s = set.closed_form_normalized_thickness()) o.summary["closed_form_S"] = to_string(*s);
    emit(o, format(Format::text), out_);
  }

  void cmd_sumset() {
    auto sp = specs();
    if (sp.size() != 2) throw DomainError("sumset needs exactly two digit sets");
    IntervalUnion a = approx(MissingDigitSet(sp[0].base(), sp[0].allowed()), o_.depth);
    IntervalUnion b = approx(MissingDigitSet(sp[1].base(), sp[1].allowed()), o_.depth);
    if (o_.difference) b = affine_image(b, -1, 0);
    IntervalUnion s = sumset(a, b);
    Output o;
    o.summary["operation"] = o_.difference ? "difference" : "sum";
    o.summary["depth"] = o_.depth;
    o.summary["is_interval"] = is_interval(s);
    o.summary["intervals"] = s.size();
    if (!s.empty()) o.summary["hull"] = interval_json(s.hull());
    o.summary["max_gap"] = to_string(largest_gap(s));
    add_union_rows(o, s);
    emit(o, format(Format::text), out_);
  }

  void cmd_certify() {
    Certificate cert;
    if (o_.rule == "astels") {
      auto S = parse_rationals(o_.S), h = parse_rationals(o_.hull_lengths), g = parse_rationals(o_.max_gaps);
      if (S.size() != h.size() || S.size() != g.size()) throw DomainError("--S, --hull-lengths and --max-gaps differ in length");
      std::vector<AstelsTerm> terms;
      for (std::size_t i = 0; i < S.size(); ++i) terms.push_back({S[i], h[i], g[i]});
      cert = astels_sum(terms);
    } else if (o_.rule == "slice") {
      auto S = parse_rationals(o_.S), g = parse_rationals(o_.max_gaps), v = parse_rationals(o_.v);
      std::vector<Interval> hull_list;
      std::istringstream entries(o_.hulls);
      for (std::string entry; std::getline(entries, entry, ';');) {
        std::istringstream in(entry);
        std::string lo, hi;
        if (!(in >> lo >> hi)) throw DomainError("malformed --hulls entry '" + entry + "'");
        hull_list.push_back({parse_rational(lo), parse_rational(hi)});
      }
      if (S.size() != g.size() || S.size() != hull_list.size()) {
        throw DomainError("--S, --hulls and --max-gaps differ in length");
      }
      std::vector<SliceTerm> terms;
      for (std::size_t i = 0; i < S.size(); ++i) terms.push_back({S[i], hull_list[i], g[i]});
      if (o_.a.empty()) throw DomainError("--a is required for the slice rule");
      cert = slice_nonempty(terms, v, parse_rational(o_.a));
    } else {
      auto sp = specs();
      if (sp.size() != 2) throw DomainError("newhouse needs exactly two digit sets");
      const Rational shift = o_.shift.empty() ? Rational(0) : parse_rational(o_.shift);
      MissingDigitSet A(sp[0].base(), sp[0].allowed());
      MissingDigitSet B(sp[1].base(), sp[1].allowed(), AffineMap{1, shift});
      const int gap_depth = std::min(o_.depth, 4);
      auto summarize = [this, gap_depth](const MissingDigitSet& s, bool& exact) {
        ThicknessReport r = thickness(s, std::max(o_.depth, 2));
        exact = exact && r.exactness == Exactness::exact;
        return SetSummary{r.S, s.hull(), gaps(approx(s, gap_depth))};
      };
      bool exact = true;
      SetSummary sa = summarize(A, exact);
      SetSummary sb = summarize(B, exact);
      cert = newhouse_intersect(sa, sb, exact);
    }
    Format f = format(Format::text);
    if (f == Format::text) {
      out_ << serialize(cert);
    } else {
      emit(certificate_output(cert), f, out_);
    }
  }

  void cmd_region() {
    Format f = format(Format::text);
    if (f == Format::svg) {
      out_ << emit_region_svg(o_.resolution);
      return;
    }
    if (o_.k1.empty() || o_.k2.empty()) throw DomainError("region needs --k1 and --k2 (or --format svg)");
    Certificate cert = region_D(parse_rational(o_.k1), parse_rational(o_.k2));
    if (f == Format::text) {
      out_ << serialize(cert);
    } else {
      emit(certificate_output(cert), f, out_);
    }
  }

  void cmd_orbit() {
    const auto bits = static_cast<mpfr_prec_t>(o_.precision_bits);
    LogRatio a = log_ratio(3, 4, bits), b = log_ratio(3, 5, bits);
    if (!o_.linear.empty()) {
      auto parts = split_any(o_.linear, ",");
      if (parts.size() != 2) throw DomainError("--linear-form expects 'l1,l2'");
      auto to_long = [](const std::string& s) {
        Rational r = parse_rational(s);
        if (denominator_of(r) != 1) throw DomainError("linear-form coefficients must be integers");
        return static_cast<long>(numerator_of(r));
      };
      LinearFormValue v = linear_form(to_long(parts[0]), to_long(parts[1]), a, b);
      Output o;
      o.summary["l1"] = parts[0];
      o.summary["l2"] = parts[1];
      o.summary["value"] = v.value.lo().to_decimal(30);
      o.summary["lower"] = v.value.lo().to_decimal(40);
      o.summary["upper"] = v.value.hi().to_decimal(40);
      o.summary["error"] = v.error;
      o.summary["distance_to_integer"] = v.distance_to_integer;
      o.summary["certified_non_integer"] = v.certified_non_integer;
      emit(o, format(Format::text), out_);
      return;
    }
    OrbitSearchOptions opts;
    opts.tolerance = o_.tolerance;
    opts.start_bits = bits;
    OrbitSearchResult r = orbit_search({a, b}, region_D_orbit_region(), o_.k_max, opts);
    Output o;
    o.summary["k_max"] = o_.k_max;
    o.summary["bits"] = r.bits;
    o.summary["hits"] = r.hits.size();
    o.summary["uncertain"] = r.uncertain.size();
    o.header = {"k", "u_lo", "u_hi", "v_lo", "v_hi", "k1_lo", "k1_hi", "k2_lo", "k2_hi", "error_bound", "verdict"};
    auto add = [&o](const OrbitHit& h, const char* verdict) {
      std::vector<std::string> row{std::to_string(h.k)};
      for (std::size_t i = 0; i < 2; ++i) {
        row.push_back(h.point.empty() ? "" : decimal(to_double(h.point[i].lo)));
        row.push_back(h.point.empty() ? "" : decimal(to_double(h.point[i].hi)));
      }
      for (std::size_t i = 0; i < 2; ++i) {
        row.push_back(h.mapped.empty() ? "" : decimal(to_double(h.mapped[i].lo)));
        row.push_back(h.mapped.empty() ? "" : decimal(to_double(h.mapped[i].hi)));
      }
      row.push_back(h.point.empty() ? "" : decimal(to_double(h.error_bound)));
      row.push_back(verdict);
      o.rows.push_back(std::move(row));
    };
    for (const auto& h : r.hits) add(h, "inside");
    for (const auto& h : r.uncertain) add(h, "uncertain");
    std::stable_sort(o.rows.begin(), o.rows.end(), [](const auto& x, const auto& y) {
      return std::stoull(x[0]) < std::stoull(y[0]);
    });
    emit(o, format(Format::csv), out_);
  }

  void cmd_triples() {
    std::array<DigitSetSpec, 3> sp = default_triple_specs();
    if (!o_.bases.empty() || !o_.digit_sets.empty()) {
      auto v = parse_specs(o_.bases.empty() ? "3;4;5" : o_.bases, o_.digit_sets.empty() ? "0,1;0,1;0,1" : o_.digit_sets);
      if (v.size() != 3) throw DomainError("triples needs exactly three bases");
      sp = {v[0], v[1], v[2]};
    }
    auto triples = triple_search(o_.limit, sp);
    Output o;
    o.summary["limit"] = o_.limit;
    o.summary["count"] = triples.size();
    o.header = {"x", "y", "z", "x_digits", "y_digits", "z_digits"};
    for (const auto& t : triples) {
      o.rows.push_back({std::to_string(t.x), std::to_string(t.y), std::to_string(t.z), t.digit_proofs[0].to_string(),
                        t.digit_proofs[1].to_string(), t.digit_proofs[2].to_string()});
    }
    emit(o, format(Format::csv), out_);
  }

  void cmd_graham() {
    GrahamReport r = graham_search(o_.limit);
    Output o;
    o.summary["N"] = r.N;
    o.summary["count"] = r.members.size();
    if (r.empirical_exponent) {
      o.summary["empirical_exponent"] = *r.empirical_exponent;
    } else {
      o.summary["empirical_exponent"] = nullptr;
    }
    o.header = {"n"};
    for (auto n : r.members) o.rows.push_back({std::to_string(n)});
    emit(o, format(Format::csv), out_);
  }

  void cmd_density() {
    DensityReport r = egrs_density(o_.p, o_.q, o_.n, std::nullopt, std::nullopt, o_.budget);
    Output o;
    o.summary["p"] = r.p;
    o.summary["q"] = r.q;
    o.summary["N"] = r.N;
    o.summary["hits"] = r.hit_exponents.size();
    o.summary["ratio"] = r.ratio;
    o.header = {"k", "hit"};
    for (std::uint64_t k = 0; k < r.N; ++k) {
      bool hit = std::binary_search(r.hit_exponents.begin(), r.hit_exponents.end(), k);
      o.rows.push_back({std::to_string(k), hit ? "true" : "false"});
    }
    emit(o, format(Format::csv), out_);
  }

  void cmd_nonzero() {
    auto bases = parse_bases(o_.bases);
    if (o_.block_n > 0) {
      Egrs4Report r = egrs4_block_check(bases, o_.block_n, parse_rational(o_.delta), o_.block_depth);
      Output o;
      o.summary["n"] = r.n;
      ordered_json m = ordered_json::array(), ratios = ordered_json::array();
      for (auto x : r.m) m.push_back(x);
      for (const auto& x : r.ratios) ratios.push_back(decimal(to_double(x)));
      o.summary["m"] = m;
      o.summary["ratios"] = ratios;
      o.summary["ok"] = r.ok();
      if (r.refusal) o.summary["refusal"] = *r.refusal;
      o.summary["intersection_intervals"] = r.intersection.size();
      if (r.witness) {
        o.summary["witness"] = r.witness->str();
        ordered_json digits = ordered_json::object();
        for (const auto& d : r.witness_digits) digits[std::to_string(d.base)] = d.to_string();
        o.summary["witness_digits"] = digits;
      }
      o.header = {"check", "lhs", "relation", "rhs", "holds"};
      for (const auto& c : r.checks) {
        o.rows.push_back({c.name, to_string(c.lhs), c.strict ? ">" : ">=", to_string(c.rhs), c.holds ? "true" : "false"});
      }
      emit(o, format(Format::text), out_);
      return;
    }
    if (o_.limit == 0) throw DomainError("nonzero needs --limit (or --block-n)");
    NonzeroReport r = simultaneous_nonzero_search(bases, o_.limit);
    Output o;
    o.summary["limit"] = o_.limit;
    o.summary["count"] = r.members.size();
    o.summary["base_two_present"] = r.base_two_present;
    o.header = {"n"};
    for (auto n : r.members) o.rows.push_back({std::to_string(n)});
    emit(o, format(Format::csv), out_);
  }

  void cmd_waring() {
    Interval target{0, o_.terms};
    if (!o_.target.empty()) {
      std::istringstream in(o_.target);
      std::string lo, hi;
      if (!(in >> lo >> hi)) throw DomainError("--target expects 'lo hi'");
      target = {parse_rational(lo), parse_rational(hi)};
    }
    WaringReport r = waring_cover_check(o_.k, o_.terms, o_.depth, target);
    Output o;
    o.summary["k"] = r.k;
    o.summary["terms"] = r.terms;
    o.summary["depth"] = r.depth;
    o.summary["is_interval"] = r.is_interval;
    o.summary["intervals"] = r.sum.size();
    o.summary["hull"] = interval_json(r.hull);
    o.summary["covers_target"] = r.covers_target;
    o.summary["max_gap"] = to_string(r.max_gap);
    emit(o, format(Format::text), out_);
  }

  void cmd_independence() {
    std::vector<std::uint64_t> bases;
    for (int b : parse_bases(o_.bases)) bases.push_back(static_cast<std::uint64_t>(b));
    IndependenceReport r = multiplicative_independence_check(bases, o_.bound);
    Output o;
    o.summary["result"] = r.kind == Independence::dependent ? "dependent" : "no_small_relation";
    if (r.kind == Independence::dependent) {
      ordered_json w = ordered_json::array();
      for (auto e : r.witness) w.push_back(e);
      o.summary["witness"] = w;
    }
    o.summary["bound"] = r.bound;
    o.summary["exhaustive"] = r.exhaustive;
    o.summary["method"] = r.method;
    emit(o, format(Format::text), out_);
  }

  std::ostream& out_;
  Options o_;
  std::function<void()> action_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact thickness, certificates and digit-restricted searches", "cantor"};
  Runner runner(out);
  runner.register_commands(app);
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  try {
    runner.run_selected();
  } catch (const CapacityError& e) {
    err << "capacity error: " << e.what() << '\n';
    return kExitCapacity;
  } catch (const DomainError& e) {
    err << "domain error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitOk;
}

}  // namespace cantor::cli

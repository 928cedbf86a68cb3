#include "cantor/restricted.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "cantor/errors.hpp"
#include "cantor/precise.hpp"

namespace cantor {

namespace {

using u128 = unsigned __int128;

// Digit-DFS over numbers whose generating-base digits lie in gen.allowed(),
// restricted to the integer window [lo, hi]. Numbers come out ascending.
class MemberWalker {
 public:
  MemberWalker(const MultiBaseSpec& spec, std::uint64_t lo, std::uint64_t hi,
               const std::function<bool(std::uint64_t)>& visit)
      : spec_(spec), gen_(spec.specs()[spec.generating_index()]), lo_(lo), hi_(hi), visit_(visit) {
    powers_.push_back(1);
    while (powers_.back() <= static_cast<u128>(hi_)) powers_.push_back(powers_.back() * static_cast<unsigned>(gen_.base()));
  }

  // Returns false when the visitor asked to stop.
  bool run() {
    // powers_.size() - 1 is the digit count of numbers just above hi
    for (std::size_t length = 1; length < powers_.size(); ++length) {
      if (!descend(0, length)) return false;
    }
    return true;
  }

 private:
  bool descend(u128 prefix, std::size_t remaining) {
    if (remaining == 0) {
      if (prefix < lo_ || prefix > hi_) return true;
      auto n = static_cast<std::uint64_t>(prefix);
      for (std::size_t i = 0; i < spec_.size(); ++i) {
        if (i == spec_.generating_index()) continue;
        if (!uses_only(n, spec_.specs()[i])) return true;
      }
      return visit_(n);
    }
    const u128 block = powers_[remaining - 1];
    for (int d : gen_.allowed()) {
      if (prefix == 0 && d == 0) continue;  // no leading zero
      u128 start = (prefix * static_cast<unsigned>(gen_.base()) + static_cast<unsigned>(d)) * block;
      if (start > hi_) break;
      u128 end = start + block - 1;
      if (end < lo_) continue;
      if (!descend(prefix * static_cast<unsigned>(gen_.base()) + static_cast<unsigned>(d), remaining - 1)) {
        return false;
      }
    }
    return true;
  }

  const MultiBaseSpec& spec_;
  const DigitSetSpec& gen_;
  u128 lo_, hi_;
  const std::function<bool(std::uint64_t)>& visit_;
  std::vector<u128> powers_;
};

}  // namespace

MultiBaseSpec::MultiBaseSpec(std::vector<DigitSetSpec> specs) : specs_(std::move(specs)) {
  if (specs_.empty()) throw DomainError("at least one base is required");
  std::set<int> bases;
  for (const auto& s : specs_) {
    if (!bases.insert(s.base()).second) {
      throw DomainError("bases must be pairwise distinct (repeated " + std::to_string(s.base()) + ")");
    }
  }
}

std::size_t MultiBaseSpec::generating_index() const {
  std::size_t best = 0;
  for (std::size_t i = 1; i < specs_.size(); ++i) {
    const auto& a = specs_[i];
    const auto& b = specs_[best];
    // compare log|A|/log a with log|B|/log b without rounding ties away:
    // |A|^{log b} vs |B|^{log a} is awkward, so compare the doubles and treat
    // near-equality as a tie
    double da = std::log(static_cast<double>(a.size())) / std::log(static_cast<double>(a.base()));
    double db = std::log(static_cast<double>(b.size())) / std::log(static_cast<double>(b.base()));
    if (da < db - 1e-12 || (std::abs(da - db) <= 1e-12 && a.base() > b.base())) best = i;
  }
  return best;
}

bool MultiBaseSpec::contains(std::uint64_t n) const {
  return std::all_of(specs_.begin(), specs_.end(), [n](const DigitSetSpec& s) { return uses_only(n, s); });
}

void for_each_member(const MultiBaseSpec& spec, std::uint64_t N, const std::function<bool(std::uint64_t)>& visit) {
  if (N < 1) return;
  MemberWalker(spec, 1, N, visit).run();
}

std::vector<std::uint64_t> enumerate(const MultiBaseSpec& spec, std::uint64_t N) {
  std::vector<std::uint64_t> out;
  for_each_member(spec, N, [&out](std::uint64_t n) {
    out.push_back(n);
    return true;
  });
  return out;
}

GrowthReport growth_report(const MultiBaseSpec& spec, std::uint64_t N) {
  if (N < 2) throw DomainError("growth_report requires N >= 2");
  GrowthReport report;
  report.N = N;
  for_each_member(spec, N, [&report](std::uint64_t) {
    ++report.count;
    return true;
  });

  constexpr mpfr_prec_t bits = 128;
  Enclosure s = Enclosure::from_integer(0, bits);
  for (const auto& d : spec.specs()) {
    if (d.size() == 1) continue;  // log 1 = 0
    s = s + Enclosure::log_of(d.size(), bits).divided_by_positive(Enclosure::log_of(static_cast<std::uint64_t>(d.base()), bits));
  }
  report.s = s.mid_double();
  report.s_error = s.width_double();
  report.predicted_exponent = report.s - static_cast<double>(spec.size() - 1);
  if (report.count >= 1) {
    report.empirical_exponent = std::log(static_cast<double>(report.count)) / std::log(static_cast<double>(N));
  }
  return report;
}

std::optional<bool> window_has_member(const MultiBaseSpec& spec, std::uint64_t lo, std::uint64_t hi,
                                      std::uint64_t& budget) {
  if (hi <= lo) return false;
  bool found = false;
  bool exhausted = false;
  std::function<bool(std::uint64_t)> visit = [&](std::uint64_t) {
    found = true;
    return false;
  };
  // the budget counts generating-base candidates, checked through a filter spec
  std::uint64_t spent = 0;
  std::vector<DigitSetSpec> specs = spec.specs();
  MultiBaseSpec gen_only({specs[spec.generating_index()]});
  std::function<bool(std::uint64_t)> counting = [&](std::uint64_t n) {
    if (++spent > budget) {
      exhausted = true;
      return false;
    }
    if (spec.contains(n)) return visit(n);
    return true;
  };
  MemberWalker(gen_only, lo, hi - 1, counting).run();
  budget = spent > budget ? 0 : budget - spent;
  if (found) return true;
  if (exhausted) return std::nullopt;
  return false;
}

}  // namespace cantor

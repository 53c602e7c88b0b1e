#pragma once

// Deterministic exchange rates between bipartite pure states.
//
//   f(m) = max { n : source^⊗m → target^⊗n }   (0 if no n works)
//   D    = sup_m f(m)/m
//
// D is bracketed by a constructive lower bound (best f(m)/m up to a budget) and
// the entropy ratio R from above. Catalyst verification, a bounded two-level
// catalyst search and the maximal conversion probability live here as well.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entrate/entropy.hpp"
#include "entrate/majorization.hpp"
#include "entrate/rational.hpp"
#include "entrate/spectrum.hpp"

namespace entrate {

inline constexpr double kSandwichSlack = 1e-9;

struct RateBudget {
  std::uint64_t m_max = 64;
  std::optional<std::uint64_t> n_cap;  // per-m ceiling; derived from Rényi ratios when unset
  std::uint32_t q_grid = 100;
  std::uint32_t copies_max = 16;
};

/// No f(m) > 0 was found within m_max. `threshold` is the copy count from
/// which α₁^m ≤ 1/dim(target) guarantees f(m) ≥ 1.
class BudgetTooSmall : public std::runtime_error {
 public:
  BudgetTooSmall(std::uint64_t m_max, std::uint64_t threshold)
      : std::runtime_error("BudgetTooSmall: f(m) = 0 for every m <= " + std::to_string(m_max) +
                           "; m >= " + std::to_string(threshold) + " is guaranteed to work"),
        threshold_(threshold) {}
  std::uint64_t threshold() const noexcept { return threshold_; }

 private:
  std::uint64_t threshold_;
};

namespace detail {

/// Lazily built tensor powers base^⊗1, base^⊗2, ...
class PowerLadder {
 public:
  explicit PowerLadder(GroupedSpectrum base) : powers_{std::move(base)} {}

  const GroupedSpectrum& operator[](std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("PowerLadder index starts at 1");
    while (powers_.size() < n) powers_.push_back(tensor_product(powers_.back(), powers_.front()));
    return powers_[n - 1];
  }

 private:
  std::vector<GroupedSpectrum> powers_;
};

inline std::uint64_t scan_down(const GroupedSpectrum& source_power, PowerLadder& target, std::uint64_t n_cap) {
  for (std::uint64_t n = n_cap; n >= 1; --n)
    if (majorizes(source_power, target[n]).holds) return n;
  return 0;
}

}  // namespace detail

/// ⌊m · min_τ S^τ(a)/S^τ(b)⌋ + 1 over τ ∈ {0, 1, 2, ∞}; each ratio bounds f(m)/m.
inline std::uint64_t default_n_cap(const GroupedSpectrum& source, const GroupedSpectrum& target, std::uint64_t m) {
  double r = std::numeric_limits<double>::infinity();
  for (auto order : {RenyiOrder::zero(), RenyiOrder::one(), RenyiOrder::finite(2.0), RenyiOrder::infinity()})
    r = std::min(r, renyi(source, order) / renyi(target, order));
  return static_cast<std::uint64_t>(std::floor(static_cast<double>(m) * r)) + 1;
}

/// f(m) restricted to n ≤ n_cap, by a downward scan from the cap. The first
/// feasible n met is the maximum within the cap, whatever the shape of the
/// feasible set.
inline std::uint64_t f_of_m(const GroupedSpectrum& source, const GroupedSpectrum& target, std::uint64_t m,
                            std::optional<std::uint64_t> n_cap = std::nullopt) {
  if (m == 0) throw std::invalid_argument("f_of_m needs m >= 1");
  if (!target.is_entangled()) throw ProductStateError("f_of_m (target)");
  std::uint64_t cap = n_cap ? *n_cap : default_n_cap(source, target, m);
  if (cap == 0) throw std::invalid_argument("f_of_m needs n_cap >= 1");
  detail::PowerLadder ladder(target);
  return detail::scan_down(tensor_power(source, m), ladder, cap);
}

/// Smallest m with α₁^m ≤ 1/dim(target), so that source^⊗m reaches the
/// maximally entangled state of the target's dimension and hence the target.
inline std::uint64_t positivity_threshold(const GroupedSpectrum& source, const GroupedSpectrum& target) {
  if (!source.is_entangled()) throw ProductStateError("positivity_threshold (source)");
  const Rational& a1 = source.largest_value();
  const BigInt& dim = target.dimension();
  auto works = [&](std::uint64_t m) { return pow(a1, m) * dim <= 1; };
  double estimate = log2(dim) / -log2(a1);
  std::uint64_t m = std::max<std::uint64_t>(1, static_cast<std::uint64_t>(std::ceil(estimate)));
  while (m > 1 && works(m - 1)) --m;
  while (!works(m)) ++m;
  return m;
}

struct LowerBound {
  Rational rate;        // f(m)/m
  std::uint64_t m = 0;  // smallest maximizing m
  std::uint64_t f = 0;
};

/// max_{1≤m≤m_max} f(m)/m. Throws BudgetTooSmall if every f(m) is zero.
inline LowerBound rate_lower_bound(const GroupedSpectrum& source, const GroupedSpectrum& target, std::uint64_t m_max,
                                   std::optional<std::uint64_t> n_cap = std::nullopt) {
  if (!source.is_entangled()) throw ProductStateError("rate_lower_bound (source)");
  if (!target.is_entangled()) throw ProductStateError("rate_lower_bound (target)");
  if (m_max == 0) throw std::invalid_argument("rate_lower_bound needs m_max >= 1");

  detail::PowerLadder sources(source), targets(target);
  LowerBound best{Rational(0), 0, 0};
  for (std::uint64_t m = 1; m <= m_max; ++m) {
    std::uint64_t cap = n_cap ? *n_cap : default_n_cap(source, target, m);
    std::uint64_t f = detail::scan_down(sources[m], targets, cap);
    Rational ratio(from_u64(f), from_u64(m));
    if (ratio > best.rate) best = LowerBound{ratio, m, f};
  }
  if (best.f == 0) throw BudgetTooSmall(m_max, positivity_threshold(source, target));
  return best;
}

/// D(source, Φ_k) = −log_k α₁.
inline double closed_form_uniform_target(const GroupedSpectrum& source, const BigInt& k) {
  if (!source.is_entangled()) throw ProductStateError("closed_form_uniform_target");
  if (k < 2) throw std::invalid_argument("closed_form_uniform_target needs k >= 2");
  return -log2(source.largest_value()) / log2(k);
}

/// Exact f(m) for the target Φ_k: the largest f with α₁^m ≤ k^(−f), decided by
/// integer comparison of k^f · p^m against q^m where α₁ = p/q.
inline std::uint64_t uniform_target_f(const GroupedSpectrum& source, const BigInt& k, std::uint64_t m) {
  if (!source.is_entangled()) throw ProductStateError("uniform_target_f");
  if (k < 2) throw std::invalid_argument("uniform_target_f needs k >= 2");
  const Rational a1m = pow(source.largest_value(), m);
  auto fits = [&](std::uint64_t f) { return a1m * pow(k, f) <= 1; };
  double estimate = static_cast<double>(m) * closed_form_uniform_target(source, k);
  std::uint64_t f = static_cast<std::uint64_t>(std::max(0.0, std::floor(estimate)));
  while (f > 0 && !fits(f)) --f;
  while (fits(f + 1)) ++f;
  return f;
}

/// source ⊗ φ^⊗copies → target ⊗ φ^⊗copies.
inline bool catalyst_verify(const GroupedSpectrum& source, const GroupedSpectrum& target,
                            const GroupedSpectrum& catalyst, std::uint64_t copies) {
  if (copies == 0) throw std::invalid_argument("catalyst_verify needs copies >= 1");
  GroupedSpectrum c = tensor_power(catalyst, copies);
  return majorizes(tensor_product(source, c), tensor_product(target, c)).holds;
}

struct CatalystSearchSpace {
  std::uint32_t q_grid = 0;
  std::uint32_t copies_max = 0;
  std::uint64_t candidates_tried = 0;
};

struct CatalystUse {
  GroupedSpectrum spectrum;
  std::uint64_t copies = 1;
};

struct CatalystReport {
  bool plain_feasible = false;
  bool catalyst_feasible = false;
  std::optional<CatalystUse> catalyst;
  std::optional<CatalystSearchSpace> search_space;  // set when the heuristic search ran
};

/// Checks a caller-supplied catalyst.
inline CatalystReport catalyst_check(const GroupedSpectrum& source, const GroupedSpectrum& target,
                                     const GroupedSpectrum& catalyst, std::uint64_t copies) {
  CatalystReport report;
  report.plain_feasible = majorizes(source, target).holds;
  report.catalyst = CatalystUse{catalyst, copies};
  report.catalyst_feasible = report.plain_feasible || catalyst_verify(source, target, catalyst, copies);
  return report;
}

/// Bounded search over two-level catalysts (q, 1−q), q = 1/2 + j/(2·q_grid) for
/// j = 1..q_grid−1, with 1..copies_max copies. Candidates are tried in
/// lexicographic (copies, q) order and the first success is returned. A failed
/// search means only that nothing in this grid works.
inline CatalystReport catalyst_search_2level(const GroupedSpectrum& source, const GroupedSpectrum& target,
                                             std::uint32_t q_grid, std::uint32_t copies_max) {
  CatalystReport report;
  report.plain_feasible = majorizes(source, target).holds;
  if (report.plain_feasible) {
    report.catalyst_feasible = true;
    return report;
  }
  CatalystSearchSpace space{q_grid, copies_max, 0};

  std::vector<GroupedSpectrum> base, current;
  for (std::uint32_t j = 1; j < q_grid; ++j) {
    Rational q = Rational(1, 2) + Rational(static_cast<unsigned long>(j), 2UL * q_grid);
    q.canonicalize();
    base.push_back(GroupedSpectrum({Group{q, 1}, Group{Rational(1 - q), 1}}));
  }
  current = base;

  for (std::uint32_t copies = 1; copies <= copies_max; ++copies) {
    for (std::size_t j = 0; j < current.size(); ++j) {
      ++space.candidates_tried;
      if (majorizes(tensor_product(source, current[j]), tensor_product(target, current[j])).holds) {
        report.catalyst_feasible = true;
        report.catalyst = CatalystUse{base[j], copies};
        report.search_space = space;
        return report;
      }
      current[j] = tensor_product(current[j], base[j]);
    }
  }
  report.search_space = space;
  return report;
}

/// Vidal's maximal success probability for source → target:
///   min_{l} E_l(source) / E_l(target),  E_l = Σ_{i ≥ l} (tail mass),
/// over l = 1..dim(target). Returns 0 when the target has larger support.
/// Both tails are linear between merged group boundaries, so the linear-fractional
/// ratio is monotone there and only boundaries need evaluating.
inline Rational max_conversion_probability(const GroupedSpectrum& source, const GroupedSpectrum& target) {
  if (target.dimension() > source.dimension()) return Rational(0);

  // candidate x = l − 1 positions
  std::vector<BigInt> points{BigInt(0), BigInt(target.dimension() - 1)};
  auto add_breakpoints = [&](const GroupedSpectrum& s) {
    BigInt acc = 0;
    for (const auto& g : s.groups()) {
      acc += g.multiplicity;
      if (acc < target.dimension()) points.push_back(acc);
    }
  };
  add_breakpoints(source);
  add_breakpoints(target);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());

  detail::PrefixCursor ca(source), cb(target);
  Rational best = 1;
  for (const auto& x : points) {
    ca.seek(x);
    cb.seek(x);
    Rational ratio = (1 - ca.prefix_sum(x)) / (1 - cb.prefix_sum(x));
    if (ratio < best) best = ratio;
  }
  return best;
}

struct RateReport {
  Rational lower_bound = 0;
  std::uint64_t lower_m = 0;  // witness m
  std::uint64_t lower_f = 0;  // f(m) at the witness
  double upper_bound = 0.0;
  RenyiOrder upper_order = RenyiOrder::zero();
  std::optional<double> closed_form;  // −log_k α₁ when the target is Φ_k
  double asymptotic = 0.0;
  std::uint64_t m_max = 0;
  std::optional<std::uint64_t> n_cap;
  bool budget_too_small = false;
  std::uint64_t positivity_threshold = 0;
};

/// Assembles both bounds on D plus the reference rates, and checks
/// lower ≤ upper (and the closed form, if any, against both) before returning.
/// A violated bracket indicates a defect and raises std::logic_error.
inline RateReport rate_report(const GroupedSpectrum& source, const GroupedSpectrum& target, const RateBudget& budget) {
  if (!source.is_entangled()) throw ProductStateError("rate_report (source)");
  if (!target.is_entangled()) throw ProductStateError("rate_report (target)");

  RateReport report;
  report.m_max = budget.m_max;
  report.n_cap = budget.n_cap;
  report.positivity_threshold = positivity_threshold(source, target);
  try {
    LowerBound lb = rate_lower_bound(source, target, budget.m_max, budget.n_cap);
    report.lower_bound = lb.rate;
    report.lower_m = lb.m;
    report.lower_f = lb.f;
  } catch (const BudgetTooSmall&) {
    report.budget_too_small = true;
  }

  EntropyRatioResult r = entropy_ratio(source, target);
  report.upper_bound = r.ratio;
  report.upper_order = r.minimizing_order;
  report.asymptotic = asymptotic_rate(source, target);
  if (target.is_uniform()) report.closed_form = closed_form_uniform_target(source, target.dimension());

  const double lower = report.lower_bound.get_d();
  if (lower > report.upper_bound + kSandwichSlack)
    throw std::logic_error("rate bracket violated: lower " + to_string(report.lower_bound) + " > upper " +
                           std::to_string(report.upper_bound));
  if (report.closed_form) {
    const double c = *report.closed_form;
    if (c > report.upper_bound + kSandwichSlack ||
        (!report.budget_too_small && c < lower - 1.0 / static_cast<double>(budget.m_max)))
      throw std::logic_error("closed form " + std::to_string(c) + " outside the computed bracket");
  }
  return report;
}

}  // namespace entrate

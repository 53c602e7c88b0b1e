#pragma once

// Rényi entropies of grouped spectra (in bits), the entropy ratio
//   R(a, b) = inf_{τ ∈ [0, ∞]} S^τ(a) / S^τ(b)
// and the asymptotic (Shannon) exchange rate.
//
// Floating point lives only in this header; everything feeding a feasibility
// verdict stays exact elsewhere.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entrate/rational.hpp"
#include "entrate/spectrum.hpp"

namespace entrate {

/// Below this distance from 1 a finite order is evaluated as Shannon entropy.
inline constexpr double kShannonWindow = 1e-6;

class RenyiOrder {
 public:
  enum class Kind { Zero, One, Infinity, Finite };

  static RenyiOrder zero() { return RenyiOrder(Kind::Zero, 0.0); }
  static RenyiOrder one() { return RenyiOrder(Kind::One, 1.0); }
  static RenyiOrder infinity() { return RenyiOrder(Kind::Infinity, std::numeric_limits<double>::infinity()); }
  static RenyiOrder finite(double tau) {
    if (!(tau > 0.0) || tau == 1.0 || !std::isfinite(tau))
      throw std::invalid_argument("finite Renyi order must be positive, finite and != 1, got " + std::to_string(tau));
    return RenyiOrder(Kind::Finite, tau);
  }

  /// Any τ in [0, ∞] mapped to the matching tag.
  static RenyiOrder from_tau(double tau) {
    if (tau == 0.0) return zero();
    if (tau == 1.0) return one();
    if (std::isinf(tau) && tau > 0) return infinity();
    return finite(tau);
  }

  /// τ from the compactified coordinate u = τ / (1 + τ) ∈ [0, 1].
  static RenyiOrder from_u(double u) {
    if (!(u >= 0.0 && u <= 1.0)) throw std::invalid_argument("u must lie in [0, 1]");
    if (u == 1.0) return infinity();
    return from_tau(u / (1.0 - u));
  }

  /// Accepts "0", "1", "inf"/"infinity", or a positive decimal.
  static RenyiOrder parse(const std::string& text) {
    if (text == "inf" || text == "infinity" || text == "Inf" || text == "+inf") return infinity();
    std::size_t used = 0;
    double tau = 0;
    try {
      tau = std::stod(text, &used);
    } catch (const std::exception&) {
      throw std::invalid_argument("bad Renyi order '" + text + "'");
    }
    if (used != text.size() || !(tau >= 0.0) || std::isnan(tau))
      throw std::invalid_argument("bad Renyi order '" + text + "'");
    return from_tau(tau);
  }

  Kind kind() const noexcept { return kind_; }
  double tau() const noexcept { return tau_; }
  double u() const noexcept { return kind_ == Kind::Infinity ? 1.0 : tau_ / (1.0 + tau_); }

  std::string label() const {
    switch (kind_) {
      case Kind::Zero: return "0";
      case Kind::One: return "1";
      case Kind::Infinity: return "inf";
      case Kind::Finite: break;
    }
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", tau_);
    return buf;
  }

  friend bool operator==(const RenyiOrder&, const RenyiOrder&) = default;

 private:
  RenyiOrder(Kind kind, double tau) : kind_(kind), tau_(tau) {}
  Kind kind_;
  double tau_;
};

namespace detail {

inline double shannon_bits(const GroupedSpectrum& s) {
  double h = 0.0;
  for (const auto& g : s.groups()) {
    double lv = log2(g.value);
    double weight = std::exp2(log2(g.multiplicity) + lv);  // m·v ≤ 1
    h -= weight * lv;
  }
  return h;
}

// log2 Σ m_i v_i^τ evaluated as a log-sum-exp so huge tensor powers stay finite.
inline double log2_power_sum(const GroupedSpectrum& s, double tau) {
  std::vector<double> terms;
  terms.reserve(s.group_count());
  for (const auto& g : s.groups()) terms.push_back(log2(g.multiplicity) + tau * log2(g.value));
  double top = *std::max_element(terms.begin(), terms.end());
  double acc = 0.0;
  for (double t : terms) acc += std::exp2(t - top);
  return top + std::log2(acc);
}

}  // namespace detail

/// S^τ(s) in bits.
inline double renyi(const GroupedSpectrum& s, const RenyiOrder& order) {
  switch (order.kind()) {
    case RenyiOrder::Kind::Zero: return log2(s.dimension());
    case RenyiOrder::Kind::One: return detail::shannon_bits(s);
    case RenyiOrder::Kind::Infinity: return -log2(s.largest_value());
    case RenyiOrder::Kind::Finite: break;
  }
  const double tau = order.tau();
  if (std::abs(tau - 1.0) < kShannonWindow) return detail::shannon_bits(s);
  return detail::log2_power_sum(s, tau) / (1.0 - tau);
}

/// S^τ(s^⊗m) = m·S^τ(s), without forming the power.
inline double renyi_power(const GroupedSpectrum& s, std::uint64_t m, const RenyiOrder& order) {
  return static_cast<double>(m) * renyi(s, order);
}

inline double shannon_entropy(const GroupedSpectrum& s) { return detail::shannon_bits(s); }

/// Golden-section minimization of a scalar function on [lo, hi]. Returns (x, f(x)).
template <typename F>
std::pair<double, double> golden_section_minimize(F&& f, double lo, double hi, double rel_tol, int max_iter = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = hi - inv_phi * (hi - lo);
  double d = lo + inv_phi * (hi - lo);
  double fc = f(c), fd = f(d);
  for (int it = 0; it < max_iter; ++it) {
    if (std::abs(hi - lo) <= rel_tol * std::max(1.0, std::abs(c) + std::abs(d))) break;
    if (fc <= fd) {
      hi = d;
      d = c;
      fd = fc;
      c = hi - inv_phi * (hi - lo);
      fc = f(c);
    } else {
      lo = c;
      c = d;
      fc = fd;
      d = lo + inv_phi * (hi - lo);
      fd = f(d);
    }
  }
  return fc <= fd ? std::pair{c, fc} : std::pair{d, fd};
}

struct EntropyRatioResult {
  double ratio = 0.0;
  RenyiOrder minimizing_order = RenyiOrder::zero();
  std::uint32_t grid_resolution = 0;
  bool refined = false;  // golden-section improved on the best grid point
};

inline constexpr std::uint32_t kDefaultRatioGrid = 2048;
inline constexpr double kRatioRefineTolerance = 1e-9;

/// Approximates R(a, b) = inf_τ S^τ(a)/S^τ(b).
///
/// τ ∈ [0, ∞] is compactified to u = τ/(1+τ) ∈ [0, 1] and scanned on the
/// uniform grid u = i/N, i = 0..N (N even, so u = 1/2 i.e. τ = 1 is a grid
/// point). The smallest grid value is then refined by golden-section search on
/// its two neighbouring cells. The returned ratio is an attained value, so it is
/// never below the true infimum.
inline EntropyRatioResult entropy_ratio(const GroupedSpectrum& a, const GroupedSpectrum& b,
                                        std::uint32_t grid = kDefaultRatioGrid) {
  if (!a.is_entangled()) throw ProductStateError("entropy_ratio (source)");
  if (!b.is_entangled()) throw ProductStateError("entropy_ratio (target)");
  if (grid < 2) throw std::invalid_argument("entropy_ratio grid must be >= 2");
  if (grid % 2 != 0) ++grid;

  auto ratio_at = [&](double u) {
    RenyiOrder order = RenyiOrder::from_u(u);
    return renyi(a, order) / renyi(b, order);
  };

  std::vector<double> values(grid + 1);
  for (std::uint32_t i = 0; i <= grid; ++i) values[i] = ratio_at(static_cast<double>(i) / grid);
  // first minimum wins ties, keeping the result independent of evaluation order
  std::uint32_t best = 0;
  for (std::uint32_t i = 1; i <= grid; ++i)
    if (values[i] < values[best]) best = i;

  EntropyRatioResult result;
  result.grid_resolution = grid;
  double best_u = static_cast<double>(best) / grid;
  result.ratio = values[best];

  double lo = static_cast<double>(best == 0 ? 0 : best - 1) / grid;
  double hi = static_cast<double>(best == grid ? grid : best + 1) / grid;
  auto [u_star, r_star] = golden_section_minimize(ratio_at, lo, hi, kRatioRefineTolerance);
  if (r_star < result.ratio) {
    result.ratio = r_star;
    best_u = u_star;
    result.refined = true;
  }
  result.minimizing_order = RenyiOrder::from_u(best_u);
  return result;
}

/// The ratio evaluated at the three closed-form orders 0, 1 and ∞.
inline double endpoint_ratio_min(const GroupedSpectrum& a, const GroupedSpectrum& b) {
  double best = std::numeric_limits<double>::infinity();
  for (auto order : {RenyiOrder::zero(), RenyiOrder::one(), RenyiOrder::infinity()})
    best = std::min(best, renyi(a, order) / renyi(b, order));
  return best;
}

/// H(a)/H(b), the asymptotic exchange rate.
inline double asymptotic_rate(const GroupedSpectrum& a, const GroupedSpectrum& b) {
  if (!b.is_entangled()) throw ProductStateError("asymptotic_rate (target)");
  return shannon_entropy(a) / shannon_entropy(b);
}

}  // namespace entrate

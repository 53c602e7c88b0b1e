#pragma once

// Deliberately naive reference implementations on fully expanded spectra.
// They share no code path with the grouped algorithms and exist to cross-check
// them on small instances (tests and the CLI --oracle flag).

#include <algorithm>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "entrate/rational.hpp"
#include "entrate/spectrum.hpp"

namespace entrate::oracle {

/// Largest expanded size any oracle routine will build.
inline constexpr std::uint64_t kSizeGuard = 10'000'000;

class SizeGuardExceeded : public std::length_error {
 public:
  explicit SizeGuardExceeded(const std::string& what)
      : std::length_error("SizeGuardExceeded: " + what + " (limit " + std::to_string(kSizeGuard) + ")") {}
};

/// Expanded, non-increasing probability vector; repeats allowed.
struct DenseSpectrum {
  std::vector<Rational> probs;

  friend bool operator==(const DenseSpectrum&, const DenseSpectrum&) = default;
};

inline DenseSpectrum dense(const SchmidtSpectrum& s) { return DenseSpectrum{s.probs()}; }

/// Expands a grouped spectrum entry by entry, within the guard.
inline DenseSpectrum dense(const GroupedSpectrum& g) {
  if (g.dimension() > from_u64(kSizeGuard)) throw SizeGuardExceeded("expanding dimension " + to_string(g.dimension()));
  DenseSpectrum out;
  for (const auto& grp : g.groups())
    for (BigInt i = 0; i < grp.multiplicity; ++i) out.probs.push_back(grp.value);
  return out;
}

/// Cartesian product of m copies, sorted descending.
inline DenseSpectrum naive_tensor_power(const DenseSpectrum& s, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("naive_tensor_power needs m >= 1");
  double size = 1.0;
  for (std::uint64_t i = 0; i < m; ++i) {
    size *= static_cast<double>(s.probs.size());
    if (size > static_cast<double>(kSizeGuard))
      throw SizeGuardExceeded(std::to_string(s.probs.size()) + "^" + std::to_string(m) + " entries");
  }
  std::vector<Rational> acc{Rational(1)};
  for (std::uint64_t i = 0; i < m; ++i) {
    std::vector<Rational> next;
    next.reserve(acc.size() * s.probs.size());
    for (const auto& x : acc)
      for (const auto& y : s.probs) next.push_back(x * y);
    acc = std::move(next);
  }
  std::sort(acc.begin(), acc.end(), std::greater<>{});
  return DenseSpectrum{std::move(acc)};
}

/// Literal definition: sum of the l largest entries of a never exceeds that of b,
/// for l = 1..min(|a|, |b|).
inline bool naive_majorizes(const DenseSpectrum& a, const DenseSpectrum& b) {
  const std::size_t n = std::min(a.probs.size(), b.probs.size());
  Rational sa = 0, sb = 0;
  for (std::size_t l = 0; l < n; ++l) {
    sa += a.probs[l];
    sb += b.probs[l];
    if (sa > sb) return false;
  }
  return true;
}

/// Sum of the l largest entries.
inline Rational naive_prefix_sum(const DenseSpectrum& s, std::uint64_t l) {
  Rational acc = 0;
  for (std::uint64_t i = 0; i < l && i < s.probs.size(); ++i) acc += s.probs[i];
  return acc;
}

/// Vidal's formula evaluated at every l.
inline Rational naive_max_conversion_probability(const DenseSpectrum& a, const DenseSpectrum& b) {
  Rational best = 1;
  Rational tail_a = 1, tail_b = 1;
  for (std::size_t l = 0; l < b.probs.size(); ++l) {
    if (l > 0) {
      tail_a -= l - 1 < a.probs.size() ? a.probs[l - 1] : Rational(0);
      tail_b -= b.probs[l - 1];
    }
    Rational ratio = tail_a / tail_b;
    if (ratio < best) best = ratio;
  }
  return best;
}

}  // namespace entrate::oracle

#pragma once

// Seeded generators shared by the property tests and the acceptance suite.

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "entrate/spectrum.hpp"

namespace entrate::gen {

/// Entries w_i / Σw with integer weights in [1, max_weight]; at most `levels`
/// entries, so at most that many distinct values.
inline SchmidtSpectrum random_spectrum(std::mt19937_64& rng, int min_levels, int max_levels, int max_weight = 20) {
  std::uniform_int_distribution<int> levels_dist(min_levels, max_levels);
  std::uniform_int_distribution<int> weight(1, max_weight);
  int levels = levels_dist(rng);
  std::vector<long> w(levels);
  for (auto& x : w) x = weight(rng);
  long total = std::accumulate(w.begin(), w.end(), 0L);
  std::vector<Rational> probs;
  for (long x : w) {
    Rational r(x, total);
    r.canonicalize();
    probs.push_back(r);
  }
  return SchmidtSpectrum(std::move(probs));
}

/// Random spectrum guaranteed to have at least two nonzero entries.
inline GroupedSpectrum random_entangled(std::mt19937_64& rng, int max_levels = 4, int max_weight = 20) {
  return to_grouped(random_spectrum(rng, 2, max_levels, max_weight));
}

/// A spectrum majorized by `b`: λ·b + (1−λ)·(b reversed), a convex combination of
/// permutations of b.
inline GroupedSpectrum random_majorized_by(std::mt19937_64& rng, const SchmidtSpectrum& b) {
  std::uniform_int_distribution<int> num(0, 16);
  Rational lambda(num(rng), 16);
  lambda.canonicalize();
  const auto& p = b.probs();
  std::vector<Rational> mix(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) mix[i] = lambda * p[i] + (1 - lambda) * p[p.size() - 1 - i];
  return to_grouped(SchmidtSpectrum(std::move(mix)));
}

}  // namespace entrate::gen

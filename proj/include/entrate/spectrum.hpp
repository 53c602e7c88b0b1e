#pragma once

// Schmidt spectra (squared Schmidt coefficients) in expanded and grouped form,
// with exact tensor algebra. Everything here is exact; no floating point.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "entrate/rational.hpp"

namespace entrate {

enum class SpectrumErrorKind { EmptySpectrum, NegativeEntry, SumNotOne, Malformed };

inline const char* to_string(SpectrumErrorKind kind) {
  switch (kind) {
    case SpectrumErrorKind::EmptySpectrum: return "EmptySpectrum";
    case SpectrumErrorKind::NegativeEntry: return "NegativeEntry";
    case SpectrumErrorKind::SumNotOne: return "SumNotOne";
    case SpectrumErrorKind::Malformed: return "Malformed";
  }
  return "Unknown";
}

class SpectrumError : public std::invalid_argument {
 public:
  SpectrumError(SpectrumErrorKind kind, const std::string& what, std::optional<Rational> deficit = std::nullopt)
      : std::invalid_argument(std::string(to_string(kind)) + ": " + what), kind_(kind), deficit_(std::move(deficit)) {}

  SpectrumErrorKind kind() const noexcept { return kind_; }
  /// For SumNotOne: 1 - (sum of entries), exactly.
  const std::optional<Rational>& deficit() const noexcept { return deficit_; }

 private:
  SpectrumErrorKind kind_;
  std::optional<Rational> deficit_;
};

/// Raised where an entangled state (two or more nonzero coefficients) is required.
class ProductStateError : public std::invalid_argument {
 public:
  explicit ProductStateError(const std::string& where)
      : std::invalid_argument("ProductState: " + where + " requires an entangled spectrum") {}
};

/// Descending, strictly positive probability vector summing exactly to one.
class SchmidtSpectrum {
 public:
  /// Strips zeros and sorts; throws SpectrumError on negative entries, empty input
  /// or a sum different from one.
  explicit SchmidtSpectrum(std::vector<Rational> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw SpectrumError(SpectrumErrorKind::EmptySpectrum, "no entries");
    Rational sum = 0;
    for (const auto& p : probs_) {
      if (sgn(p) < 0) throw SpectrumError(SpectrumErrorKind::NegativeEntry, "entry " + to_string(p) + " is negative");
      sum += p;
    }
    if (sum != 1) {
      Rational deficit = 1 - sum;
      throw SpectrumError(SpectrumErrorKind::SumNotOne,
                          "entries sum to " + to_string(sum) + " (deficit " + to_string(deficit) + ")", deficit);
    }
    std::erase_if(probs_, [](const Rational& p) { return sgn(p) == 0; });
    std::sort(probs_.begin(), probs_.end(), std::greater<>{});
  }

  const std::vector<Rational>& probs() const noexcept { return probs_; }
  std::size_t dimension() const noexcept { return probs_.size(); }
  const Rational& largest() const noexcept { return probs_.front(); }

  friend bool operator==(const SchmidtSpectrum&, const SchmidtSpectrum&) = default;

 private:
  std::vector<Rational> probs_;
};

/// One distinct Schmidt coefficient and how many times it occurs.
struct Group {
  Rational value;
  BigInt multiplicity;

  friend bool operator==(const Group& a, const Group& b) {
    return a.value == b.value && a.multiplicity == b.multiplicity;
  }
};

/// Compressed spectrum: distinct values strictly descending, each with a
/// big-integer multiplicity. Tensor powers stay polynomial in size here.
class GroupedSpectrum {
 public:
  /// Accepts groups in any order; equal values are merged. Throws SpectrumError
  /// if a value is not positive, a multiplicity is not positive, or the total
  /// mass differs from one.
  explicit GroupedSpectrum(std::vector<Group> groups) {
    if (groups.empty()) throw SpectrumError(SpectrumErrorKind::EmptySpectrum, "no groups");
    for (const auto& g : groups) {
      if (sgn(g.value) <= 0)
        throw SpectrumError(SpectrumErrorKind::NegativeEntry, "group value " + to_string(g.value) + " is not positive");
      if (sgn(g.multiplicity) <= 0)
        throw SpectrumError(SpectrumErrorKind::Malformed,
                            "multiplicity " + to_string(g.multiplicity) + " is not positive");
    }
    groups_ = canonical(std::move(groups));
    Rational mass = total_mass();
    if (mass != 1)
      throw SpectrumError(SpectrumErrorKind::SumNotOne, "grouped mass is " + to_string(mass), Rational(1 - mass));
    dimension_ = count();
  }

  /// The maximally entangled spectrum (1/k, ..., 1/k).
  static GroupedSpectrum uniform(const BigInt& k) {
    if (k < 1) throw std::invalid_argument("uniform spectrum needs k >= 1");
    return GroupedSpectrum(Unchecked{}, {Group{Rational(1, k), k}});
  }

  static GroupedSpectrum product_state() { return uniform(1); }

  const std::vector<Group>& groups() const noexcept { return groups_; }
  std::size_t group_count() const noexcept { return groups_.size(); }

  /// Number of nonzero Schmidt coefficients (the expanded length).
  const BigInt& dimension() const noexcept { return dimension_; }

  const Rational& largest_value() const noexcept { return groups_.front().value; }
  const Rational& smallest_value() const noexcept { return groups_.back().value; }

  bool is_entangled() const noexcept { return dimension_ > 1; }
  bool is_uniform() const noexcept { return groups_.size() == 1; }

  Rational total_mass() const {
    Rational mass = 0;
    for (const auto& g : groups_) mass += g.value * g.multiplicity;
    return mass;
  }

  friend bool operator==(const GroupedSpectrum& a, const GroupedSpectrum& b) { return a.groups_ == b.groups_; }

  friend GroupedSpectrum tensor_product(const GroupedSpectrum& a, const GroupedSpectrum& b);

 private:
  struct Unchecked {};

  // Callers guarantee positive values, positive multiplicities and unit mass.
  GroupedSpectrum(Unchecked, std::vector<Group> groups) : groups_(canonical(std::move(groups))), dimension_(count()) {}

  static std::vector<Group> canonical(std::vector<Group> groups) {
    std::sort(groups.begin(), groups.end(), [](const Group& x, const Group& y) { return x.value > y.value; });
    std::vector<Group> merged;
    merged.reserve(groups.size());
    for (auto& g : groups) {
      if (!merged.empty() && merged.back().value == g.value)
        merged.back().multiplicity += g.multiplicity;
      else
        merged.push_back(std::move(g));
    }
    return merged;
  }

  BigInt count() const {
    BigInt n = 0;
    for (const auto& g : groups_) n += g.multiplicity;
    return n;
  }

  std::vector<Group> groups_;
  BigInt dimension_;
};

/// Schmidt spectrum of a tensor product: all pairwise products, merged.
inline GroupedSpectrum tensor_product(const GroupedSpectrum& a, const GroupedSpectrum& b) {
  std::vector<Group> out;
  out.reserve(a.groups_.size() * b.groups_.size());
  for (const auto& x : a.groups_)
    for (const auto& y : b.groups_) out.push_back(Group{x.value * y.value, x.multiplicity * y.multiplicity});
  return GroupedSpectrum(GroupedSpectrum::Unchecked{}, std::move(out));
}

/// m-fold tensor power by binary exponentiation over tensor_product.
inline GroupedSpectrum tensor_power(const GroupedSpectrum& a, std::uint64_t m) {
  if (m == 0) throw std::invalid_argument("tensor_power needs m >= 1");
  std::optional<GroupedSpectrum> result;
  GroupedSpectrum square = a;
  while (true) {
    if (m & 1U) result = result ? tensor_product(*result, square) : square;
    m >>= 1U;
    if (m == 0) break;
    square = tensor_product(square, square);
  }
  return *result;
}

inline const Rational& largest_value(const GroupedSpectrum& a) { return a.largest_value(); }

inline GroupedSpectrum to_grouped(const SchmidtSpectrum& s) {
  std::vector<Group> groups;
  groups.reserve(s.dimension());
  for (const auto& p : s.probs()) groups.push_back(Group{p, 1});
  return GroupedSpectrum(std::move(groups));
}

/// Largest expansion `expand` will materialize.
inline constexpr std::uint64_t kMaxExpandedDimension = 10'000'000;

/// Inverse of to_grouped. Throws std::length_error above kMaxExpandedDimension.
inline SchmidtSpectrum expand(const GroupedSpectrum& g) {
  if (g.dimension() > from_u64(kMaxExpandedDimension))
    throw std::length_error("refusing to expand a spectrum of dimension " + to_string(g.dimension()));
  std::vector<Rational> probs;
  probs.reserve(to_u64(g.dimension()));
  for (const auto& grp : g.groups()) probs.insert(probs.end(), to_u64(grp.multiplicity), grp.value);
  return SchmidtSpectrum(std::move(probs));
}

/// Exact parse of textual entries ("2/5", "0.4"). No renormalization is ever applied.
inline SchmidtSpectrum parse_spectrum(std::span<const std::string> entries) {
  if (entries.empty()) throw SpectrumError(SpectrumErrorKind::EmptySpectrum, "no entries");
  std::vector<Rational> probs;
  probs.reserve(entries.size());
  for (const auto& e : entries) {
    try {
      probs.push_back(parse_rational(e));
    } catch (const std::invalid_argument& ex) {
      throw SpectrumError(SpectrumErrorKind::Malformed, ex.what());
    }
  }
  return SchmidtSpectrum(std::move(probs));
}

inline SchmidtSpectrum parse_spectrum(std::initializer_list<std::string> entries) {
  std::vector<std::string> v(entries);
  return parse_spectrum(std::span<const std::string>(v));
}

/// Shorthand used throughout: parse then group.
inline GroupedSpectrum grouped(std::initializer_list<std::string> entries) { return to_grouped(parse_spectrum(entries)); }

}  // namespace entrate

#pragma once

// Majorization on grouped spectra and Nielsen's transformability criterion.
//
// The prefix sum S(l) of a grouped spectrum is piecewise linear in l with
// breakpoints at group boundaries, so the gap S_a(l) - S_b(l) is piecewise
// linear on the merged breakpoint set. Checking the gap at those breakpoints
// decides a ≺ b exactly without ever expanding multiplicities.

#include <cstdint>
#include <optional>

#include "entrate/rational.hpp"
#include "entrate/spectrum.hpp"

namespace entrate {

struct MajorizationWitness {
  BigInt prefix_length;      // l
  Rational source_prefix_sum;  // sum of the l largest source coefficients
  Rational target_prefix_sum;  // same for the target; strictly smaller

  friend bool operator==(const MajorizationWitness& x, const MajorizationWitness& y) {
    return x.prefix_length == y.prefix_length && x.source_prefix_sum == y.source_prefix_sum &&
           x.target_prefix_sum == y.target_prefix_sum;
  }
};

struct MajorizationVerdict {
  bool holds = true;
  std::optional<MajorizationWitness> witness;  // present iff !holds
  std::uint64_t breakpoints_checked = 0;

  explicit operator bool() const noexcept { return holds; }
};

namespace detail {

/// Cursor over a grouped spectrum viewed as the step function l -> S(l).
class PrefixCursor {
 public:
  explicit PrefixCursor(const GroupedSpectrum& s) : groups_(s.groups()) {}

  bool exhausted() const noexcept { return index_ >= groups_.size(); }
  const Rational& slope() const { return groups_[index_].value; }
  BigInt group_end() const { return count_before_ + groups_[index_].multiplicity; }

  /// Exact S(l) for l inside or at the end of the current group.
  Rational prefix_sum(const BigInt& l) const {
    return mass_before_ + Rational(l - count_before_) * groups_[index_].value;
  }

  /// Moves forward until l lies inside (or at the end of) the current group.
  void seek(const BigInt& l) {
    while (!exhausted() && group_end() < l) advance_if_ends_at(group_end());
  }

  void advance_if_ends_at(const BigInt& l) {
    if (!exhausted() && group_end() == l) {
      mass_before_ += groups_[index_].value * groups_[index_].multiplicity;
      count_before_ = l;
      ++index_;
    }
  }

 private:
  const std::vector<Group>& groups_;
  std::size_t index_ = 0;
  BigInt count_before_ = 0;
  Rational mass_before_ = 0;
};

}  // namespace detail

/// Decides a ≺ b: every prefix sum of a is at most the matching prefix sum of b,
/// for l = 1..min(dim a, dim b). On failure the witness carries the smallest
/// violating l and both exact prefix sums there.
inline MajorizationVerdict majorizes(const GroupedSpectrum& a, const GroupedSpectrum& b) {
  MajorizationVerdict verdict;
  const BigInt limit = a.dimension() < b.dimension() ? a.dimension() : b.dimension();

  detail::PrefixCursor ca(a), cb(b);
  BigInt l = 0;
  Rational gap = 0;  // S_a(l) - S_b(l), always <= 0 here
  while (l < limit) {
    BigInt next = ca.group_end();
    if (BigInt eb = cb.group_end(); eb < next) next = eb;
    if (limit < next) next = limit;

    Rational slope = ca.slope() - cb.slope();
    Rational gap_next = gap + Rational(next - l) * slope;
    ++verdict.breakpoints_checked;
    if (sgn(gap_next) > 0) {
      // slope > 0 on this segment; first integer step where the gap turns positive
      BigInt steps;
      Rational ratio = -gap / slope;
      mpz_fdiv_q(steps.get_mpz_t(), ratio.get_num_mpz_t(), ratio.get_den_mpz_t());
      BigInt violating = l + steps + 1;
      verdict.holds = false;
      verdict.witness = MajorizationWitness{violating, ca.prefix_sum(violating), cb.prefix_sum(violating)};
      return verdict;
    }
    gap = gap_next;
    l = next;
    ca.advance_if_ends_at(l);
    cb.advance_if_ends_at(l);
  }
  return verdict;
}

/// Nielsen: source → target deterministically by LOCC iff λ_source ≺ λ_target.
inline MajorizationVerdict nielsen_transformable(const GroupedSpectrum& source, const GroupedSpectrum& target) {
  return majorizes(source, target);
}

/// Whether source reaches the k-level maximally entangled state: α₁ ≤ 1/k.
inline bool max_entangled_reachable(const GroupedSpectrum& source, const BigInt& k) {
  if (k < 1) throw std::invalid_argument("max_entangled_reachable needs k >= 1");
  return source.largest_value() * k <= 1;
}

inline bool max_entangled_reachable(const GroupedSpectrum& source, std::uint64_t k) {
  return max_entangled_reachable(source, from_u64(k));
}

}  // namespace entrate

#pragma once

// Point-flat incidences and exhaustive checks of the incidence estimates used
// for large Furstenberg sets: the Haemers-type bound, the poor-flat bound,
// subflats inside a direction family, rich (k-1)-flats of a Furstenberg set,
// and the heavy-flats covering bound.

#include <cstdint>
#include <string>
#include <vector>

#include "flab/exact.hpp"
#include "flab/furstenberg.hpp"
#include "flab/geometry.hpp"

namespace flab {

/// Deduplicated, sorted set of canonical flats of one rank in one space.
class FlatFamily {
 public:
  FlatFamily(AffineSpace space, std::size_t rank) : space_(std::move(space)), rank_(rank) {}
  /// Throws EmptyInput for no flats and DimensionMismatch for mixed ranks or
  /// ambient dimensions.
  static FlatFamily of(AffineSpace space, std::vector<Flat> flats);

  /// Returns false when the flat was already present.
  bool insert(Flat flat);

  const AffineSpace& space() const noexcept { return space_; }
  std::size_t rank() const noexcept { return rank_; }
  std::size_t size() const noexcept { return flats_.size(); }
  const std::vector<Flat>& flats() const noexcept { return flats_; }

  friend bool operator==(const FlatFamily& a, const FlatFamily& b) {
    return a.space_ == b.space_ && a.rank_ == b.rank_ && a.flats_ == b.flats_;
  }

 private:
  AffineSpace space_;
  std::size_t rank_;
  std::vector<Flat> flats_;
};

struct FlatCount {
  Flat flat;
  std::uint64_t points = 0;
  bool flagged = false;  // poor for poor-flat censuses, rich for rich-flat censuses
};

/// lhs is the measured quantity and the right-hand side is
/// rhs + sqrt(radicand); ok compares them as the lemma states.
struct IncidenceReport {
  std::string lemma;
  BigInt incidences = 0;
  Rational lhs = 0;
  Rational rhs = 0;
  Rational radicand = 0;
  bool hypothesis_met = true;
  bool ok = false;
  BigInt k_factor = 0;         // contained_subflats: the K(q, n-l, k-l, q^{k-l}) value used
  bool k_factor_exact = false;  // ... and whether it came from exact search
  std::vector<FlatCount> census;
};

/// Throws DimensionMismatch unless S and L share the ambient space.
BigInt count_incidences(const PointSet& s, const FlatFamily& l, unsigned threads = 1);

/// I(S,L) <= q^{k-n}|S||L| + sqrt(q^k binom(n-1,k)_q |S||L|), compared
/// exactly by squaring.
IncidenceReport haemers_check(const PointSet& s, const FlatFamily& l, unsigned threads = 1);

/// Counts l-flats with fewer than delta |S| q^{l-k} + 1 points of S (k the
/// ambient dimension) against (1 + |S| q^{l-k} (1-delta)^2)^{-1} q^{k-l}
/// binom(k,l)_q. Throws EmptyInput, BadRange for l outside [1, k-1] and
/// BadDelta for delta outside (0, 1).
IncidenceReport poor_flat_census(const PointSet& s, std::size_t l, const Rational& delta, const Budget& budget = {},
                                 unsigned threads = 1);

/// Number of distinct l-flats inside some flat of the direction family F,
/// against K(q, n-l, k-l, q^{k-l}) binom(n,l)_q. Throws NotADirectionFamily
/// unless F has exactly one flat per rank-k subspace, BadRange unless l < k.
IncidenceReport contained_subflats(const FlatFamily& family, std::size_t l, const Budget& budget = {},
                                   unsigned threads = 1);

/// Counts (k-1)-flats with at least delta m / q + 1 points of S against
/// 2^{k-2-n} q^{n-k+1} binom(n,k-1)_q (ok is the strict inequality).
/// hypothesis_met records m >= 2^{n+3-k} q (1-delta)^{-2}. Throws
/// NotFurstenberg when S is not a (k,m)-Furstenberg set and BadDelta for
/// delta outside (0, 1).
IncidenceReport kakeya_becks_census(const PointSet& s, std::size_t k, std::uint64_t m, const Rational& delta,
                                    const Budget& budget = {}, unsigned threads = 1);

/// (delta kappa/(kappa+1) - sqrt(delta (1-delta)/kappa)) q^n with
/// kappa = gamma q^l. Throws BadRange unless 0 < delta <= 1 and gamma > 0.
BoundValue heavy_flats_lower_bound(const Rational& delta, const Rational& gamma, std::size_t l, std::size_t n,
                                   std::uint64_t q);

/// The covering bound at delta = m q^{-k}, l = k, |L| = binom(n,k)_q.
BoundValue heavy_flats_for_furstenberg(std::uint64_t q, std::size_t n, std::size_t k, std::uint64_t m);

}  // namespace flab

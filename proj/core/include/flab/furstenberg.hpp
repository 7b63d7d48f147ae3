#pragma once

// (k,m)-Furstenberg sets: verification with witnesses, exact extremal search
// on tiny spaces, the pigeonhole and field-extension constructions, and exact
// evaluation of the known lower and upper bounds on K(q,n,k,m).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "flab/exact.hpp"
#include "flab/geometry.hpp"

namespace flab {

/// Parameters (F_q, n, k, m) with 1 <= k < n and 1 <= m <= q^k.
class FurstenbergInstance {
 public:
  /// Throws BadRange when the parameters violate the invariants.
  FurstenbergInstance(Field field, std::size_t n, std::size_t k, std::uint64_t m);

  const Field& field() const noexcept { return field_; }
  std::uint64_t q() const noexcept { return field_.order(); }
  std::size_t n() const noexcept { return n_; }
  std::size_t k() const noexcept { return k_; }
  std::uint64_t m() const noexcept { return m_; }

 private:
  Field field_;
  std::size_t n_;
  std::size_t k_;
  std::uint64_t m_;
};

struct WitnessEntry {
  Subspace direction;
  Flat flat;            // richest translate, first in coset order on ties
  std::uint64_t count;  // |S ∩ flat|
};

/// One entry per rank-k direction, in enumeration order.
using WitnessFamily = std::vector<WitnessEntry>;

struct FurstenbergVerdict {
  bool ok = false;
  WitnessFamily witness;            // complete when ok
  std::optional<Subspace> failing;  // first direction with no m-rich translate
};

/// Throws BadRange for k or m outside the instance invariants and
/// BudgetExceeded when qbinomial(n,k,q) * q^{n-k} exceeds the budget.
FurstenbergVerdict is_furstenberg(const PointSet& s, std::size_t k, std::uint64_t m, const Budget& budget = {},
                                  unsigned threads = 1);

/// Recounts every witness flat against s.
bool witness_verifies(const PointSet& s, const WitnessFamily& witness, std::uint64_t m);

enum class BoundKind { Lower, Upper };

/// value^{1/root} - sqrt(radicand), kept exact.
struct BoundValue {
  Rational value = 0;
  std::uint64_t root = 1;
  Rational radicand = 0;

  double approx() const;
  /// this <= t, decided in exact arithmetic.
  bool le(const BigInt& t) const;
  /// this >= t.
  bool ge(const BigInt& t) const;
};

struct BoundRow {
  std::string source;
  BoundKind kind = BoundKind::Lower;
  BoundValue rhs;
  std::string exponent_note;
  bool applicable = false;

  /// Whether K = t is consistent with this row (true when not applicable).
  bool satisfied_by(const BigInt& t) const;
};

struct BoundReport {
  FurstenbergInstance instance;
  std::vector<BoundRow> rows;

  /// Smallest integer allowed by the applicable lower rows (at least 1).
  BigInt best_lower() const;
  /// Smallest applicable upper row, rounded down.
  BigInt best_upper() const;
};

/// Throws BadEpsilon unless epsilon, when given, lies in (0, 1).
BoundReport bound_table(const FurstenbergInstance& inst, const std::optional<Rational>& epsilon = std::nullopt);

/// (1 - q^{n-2k} - sqrt(q^{n-k}/m)) m q^{n-k} as rational part minus sqrt(radicand).
BoundValue pure_incidence_bound(std::uint64_t q, std::size_t n, std::size_t k, std::uint64_t m);

struct ExtremalResult {
  bool exact = false;
  BigInt lower;  // equals upper when exact
  BigInt upper;
  std::optional<PointSet> example;  // a Furstenberg set of size upper
  std::uint64_t nodes = 0;          // search nodes visited
};

/// Exact K(q,n,k,m) when q^n <= 16, otherwise bounds from the table and from
/// greedy pruning of the pigeonhole construction.
ExtremalResult search_extremal(const FurstenbergInstance& inst, const Budget& budget = {}, unsigned threads = 1);

/// The first m q^{n-k} points in lexicographic order. Throws BadSize when
/// that exceeds q^n.
PointSet trivial_construction(const FurstenbergInstance& inst);

/// Applies base_vector_iso coordinate-wise.
PointSet lift_construction(const FieldExtension& ext, const PointSet& big_set);

/// The rank-k subspace of F_q^{rk} obtained by lifting the line direction d
/// of F_{q^k}^r.
Subspace lift_direction(const FieldExtension& ext, std::span<const FieldElement> d);

struct LiftedCoverage {
  bool ok = false;
  std::vector<std::uint64_t> counts;  // per line direction of F_{q^k}^r, best translate count
  std::optional<Subspace> failing;
};

/// Checks that the lifted set meets a translate of every lifted direction in
/// at least m points.
LiftedCoverage lifted_coverage(const FieldExtension& ext, std::size_t r, const PointSet& lifted, std::uint64_t m,
                               const Budget& budget = {});

}  // namespace flab

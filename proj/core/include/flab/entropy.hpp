#pragma once

// Min-entropy of rational distributions on F_q^n, pushforwards under onto
// linear maps, best projections, and the exact integer forms of the entropic
// projection bounds and the l^n norm bound.
//
// A distribution is a map point -> positive integer weight f(x) with total
// S; Pr[R = x] = f(x)/S. Min-entropy H = log_q(S / max f) is carried as the
// integer pair (max f, S); every inequality between entropies is decided by
// exponentiating and clearing denominators, never in floating point.

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "flab/exact.hpp"
#include "flab/geometry.hpp"

namespace flab {

class RationalDistribution {
 public:
  explicit RationalDistribution(AffineSpace space) : space_(std::move(space)) {}

  /// Uniform distribution on a nonempty point set.
  static RationalDistribution uniform(const PointSet& support);

  /// Adds weight to a point. Zero weights are ignored.
  void add(std::span<const FieldElement> point, std::uint64_t weight);
  void add_index(std::uint64_t index, std::uint64_t weight);

  const AffineSpace& space() const noexcept { return space_; }
  const Field& field() const noexcept { return space_.field(); }
  std::size_t dim() const noexcept { return space_.dim(); }
  /// Packed point index -> positive weight.
  const std::map<std::uint64_t, std::uint64_t>& weights() const noexcept { return weights_; }
  std::uint64_t total() const noexcept { return total_; }
  bool empty() const noexcept { return weights_.empty(); }
  std::uint64_t weight_of(std::span<const FieldElement> point) const;

  friend bool operator==(const RationalDistribution&, const RationalDistribution&) = default;

 private:
  AffineSpace space_;
  std::map<std::uint64_t, std::uint64_t> weights_;
  std::uint64_t total_ = 0;
};

/// H = log_q(total / max_weight).
struct EntropyValue {
  BigInt max_weight = 1;
  BigInt total = 1;

  double approx(std::uint32_t q) const;
  friend bool operator==(const EntropyValue&, const EntropyValue&) = default;
};

/// Orders by entropy value (not by representation).
std::strong_ordering compare_entropy(const EntropyValue& a, const EntropyValue& b);

/// Throws EmptyInput for the empty distribution.
EntropyValue min_entropy(const RationalDistribution& dist);

class OntoLinearMap {
 public:
  OntoLinearMap() = default;
  /// Throws BadRange unless the matrix has full row rank.
  static OntoLinearMap from_matrix(const Field& field, Matrix matrix);
  /// Some map F_q^n -> F_q^{n-k} whose kernel is the given subspace.
  static OntoLinearMap from_kernel(const Field& field, const Subspace& kernel);

  const Matrix& matrix() const noexcept { return matrix_; }
  const Subspace& kernel() const noexcept { return kernel_; }
  std::size_t domain_dim() const noexcept { return matrix_.cols(); }
  std::size_t codomain_dim() const noexcept { return matrix_.rows(); }

  /// this after first: x -> this(first(x)).
  OntoLinearMap compose_after(const Field& field, const OntoLinearMap& first) const;

 private:
  OntoLinearMap(Matrix m, Subspace k) : matrix_(std::move(m)), kernel_(std::move(k)) {}
  Matrix matrix_;
  Subspace kernel_;
};

/// Throws DimensionMismatch.
RationalDistribution pushforward(const RationalDistribution& dist, const OntoLinearMap& map);

struct EntropicWitness {
  OntoLinearMap map;
  Point shift_value;  // codomain point of maximal pushforward weight
  EntropyValue attained;
};

struct ProjectionResult {
  EntropicWitness witness;
  EntropyValue entropy;
  std::uint64_t kernels_examined = 0;
};

/// Maximizes min_entropy(pushforward(dist, phi)) over one phi per rank-k
/// kernel; ties go to the first kernel in enumeration order.
ProjectionResult best_projection(const RationalDistribution& dist, std::size_t k, const Budget& budget = {},
                                 unsigned threads = 1);

struct EntropicBoundReport {
  bool ok = false;
  EntropicWitness witness;
  BigInt lhs;     // g^n q^{nk}
  BigInt rhs;     // f(v)^{n-k} S^k (2q-1)^{nk}
  BigInt margin;  // rhs - lhs
};

/// H(phi(R)) >= ((n-k)/n) H(R) - k log_q(2 - 1/q) for the best projection.
EntropicBoundReport check_entropic_bound(const RationalDistribution& dist, std::size_t k, const Budget& budget = {},
                                         unsigned threads = 1);

/// Same inequality for an arbitrary onto map, given its attained max weight.
bool entropic_bound_holds(const RationalDistribution& dist, std::size_t k, const BigInt& max_pushforward_weight,
                          BigInt* lhs = nullptr, BigInt* rhs = nullptr);

struct RecursionReport {
  std::vector<EntropyValue> stages;  // entropy after each single-codimension step
  OntoLinearMap composed_map;
  EntropyValue composed;
  EntropyValue direct;
  bool composed_ok = false;          // chain satisfies the rank-k inequality
  bool direct_ok = false;
  bool composed_not_above_direct = false;
};

/// Greedy k-fold composition of best one-codimension projections against the
/// direct best rank-k projection.
RecursionReport check_recursion(const RationalDistribution& dist, std::size_t k, const Budget& budget = {},
                                unsigned threads = 1);

/// Integer-valued function on F_q^n, zero by default.
class IntegerFunction {
 public:
  explicit IntegerFunction(AffineSpace space) : space_(std::move(space)) {}
  static IntegerFunction from_distribution(const RationalDistribution& dist);

  void set(std::span<const FieldElement> point, std::int64_t value);
  void set_index(std::uint64_t index, std::int64_t value);
  std::int64_t value_index(std::uint64_t index) const;

  const AffineSpace& space() const noexcept { return space_; }
  const std::map<std::uint64_t, std::int64_t>& values() const noexcept { return values_; }

 private:
  AffineSpace space_;
  std::map<std::uint64_t, std::int64_t> values_;
};

/// min over directions of max over lines in that direction of sum |f|:
/// the largest r satisfying the heavy-line hypothesis.
BigInt heavy_line_level(const IntegerFunction& f, const Budget& budget = {});

struct NormBoundReport {
  bool hypothesis_ok = false;
  BigInt sum;        // sum |f(x)|^n
  BigInt bound_num;  // r^n q^n
  BigInt bound_den;  // (2q-1)^n
  bool ok = false;   // bound_den * sum >= bound_num
};

NormBoundReport norm_bound_check(const IntegerFunction& f, const BigInt& r, const Budget& budget = {});

struct KeyBoundReport {
  BigInt multiplicity_scale;  // N = m(2q-1)/r
  BigInt degree;              // d = mq - r
  BigInt lhs;                 // sum_x binom(N|f(x)| + n - 1, n)
  BigInt rhs;                 // binom(d + n, n)
  bool holds = false;
};

/// Finite-m interpolation inequality behind the norm bound; m must be a
/// positive multiple of r.
KeyBoundReport key_bound_check(const IntegerFunction& f, std::uint64_t r, std::uint64_t m);
/// Smallest multiple m = r, 2r, ..., max_multiple*r for which the inequality
/// holds, if any.
std::optional<std::uint64_t> key_bound_threshold(const IntegerFunction& f, std::uint64_t r, std::uint64_t max_multiple);

/// A constant of the form base^{-exponent}. The same value type carries the
/// entropy loss D = exponent * log_q(base), so both directions of the
/// Furstenberg/entropy constant correspondence are exact.
struct LogConstant {
  BigInt base = 2;
  Rational exponent = 0;

  /// Rewrites base as its smallest integer root, scaling the exponent.
  LogConstant normalized() const;
  double as_constant() const;                    // base^{-exponent}
  double as_loss(std::uint32_t q) const;         // exponent * log_q(base)
  friend bool operator==(const LogConstant& a, const LogConstant& b);
};

enum class ConstantTransform { AtoB, BtoA };

/// AtoB: C -> D = (k/n) log_q(1/C). BtoA: D -> C = q^{-(n/k) D}.
/// Throws BadRange for C outside (0, 1], D < 0, or k outside [1, n).
LogConstant ab_constants(ConstantTransform direction, const LogConstant& value, std::size_t n, std::size_t k);

struct LinearMapStatementReport {
  bool ok = false;
  ProjectionResult projection;
};

/// For the uniform distribution on S with |S| = q^{delta n}: some onto map has
/// H(phi(U_S)) >= delta (n - k) - D.
LinearMapStatementReport check_linear_map_statement(const PointSet& s, std::size_t k, const LogConstant& loss,
                                                    const Budget& budget = {}, unsigned threads = 1);

}  // namespace flab

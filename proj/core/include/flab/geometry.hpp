#pragma once

// Linear and affine geometry of F_q^n: dense matrices with RREF, canonical
// subspaces and flats, point sets, q-binomials and deterministic enumeration.
//
// Canonical forms:
//  * a rank-k subspace is its k x n basis in reduced row echelon form;
//  * a flat is (direction, shift) where shift is the unique coset
//    representative with zeros in every pivot column of the direction.
// Two subspaces (flats) are equal iff their canonical forms are identical.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "flab/exact.hpp"
#include "flab/gf.hpp"

namespace flab {

using Point = std::vector<FieldElement>;

/// Cap on the number of objects any enumeration may produce.
struct Budget {
  std::uint64_t max_objects = 10'000'000;

  /// Throws BudgetExceeded when count > max_objects.
  void check(const BigInt& count, const std::string& what) const;
};

/// F_q^n together with the packing of points into integers. Coordinate 0 is
/// the most significant digit, so index order is lexicographic order.
class AffineSpace {
 public:
  /// Throws BadRange unless q^n < 2^62.
  AffineSpace(Field field, std::size_t n);

  const Field& field() const noexcept { return field_; }
  std::size_t dim() const noexcept { return n_; }
  std::uint64_t size() const noexcept { return size_; }

  std::uint64_t index(std::span<const FieldElement> point) const;
  Point point(std::uint64_t index) const;
  Point origin() const { return Point(n_, Field::zero()); }

  friend bool operator==(const AffineSpace& a, const AffineSpace& b) noexcept {
    return a.n_ == b.n_ && a.field_ == b.field_;
  }

 private:
  Field field_;
  std::size_t n_;
  std::uint64_t size_;
};

class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  static Matrix from_rows(std::span<const Point> rows, std::size_t cols);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  FieldElement& at(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  FieldElement at(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<FieldElement> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const FieldElement> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  friend bool operator==(const Matrix&, const Matrix&) = default;
  friend auto operator<=>(const Matrix& a, const Matrix& b) {
    if (auto c = a.rows_ <=> b.rows_; c != 0) return c;
    if (auto c = a.cols_ <=> b.cols_; c != 0) return c;
    return a.data_ <=> b.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<FieldElement> data_;
};

struct RrefResult {
  Matrix matrix;  // same shape as the input, zero rows at the bottom
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

RrefResult rref(const Field& field, Matrix m);

/// Basis of {y : m y = 0}, one vector per free column of rref(m).
std::vector<Point> null_space(const Field& field, const Matrix& m);

Matrix mat_mul(const Field& field, const Matrix& a, const Matrix& b);
Point mat_vec(const Field& field, const Matrix& m, std::span<const FieldElement> v);

class Subspace {
 public:
  Subspace() = default;

  /// Row space of the given vectors.
  static Subspace span_of(const Field& field, std::size_t n, std::span<const Point> vectors);
  static Subspace zero(std::size_t n);
  static Subspace full(std::size_t n);

  std::size_t ambient_dim() const noexcept { return n_; }
  std::size_t rank() const noexcept { return basis_.rows(); }
  const Matrix& basis() const noexcept { return basis_; }
  const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }
  std::vector<std::size_t> free_columns() const;

  friend bool operator==(const Subspace& a, const Subspace& b) noexcept {
    return a.n_ == b.n_ && a.basis_ == b.basis_;
  }
  friend auto operator<=>(const Subspace& a, const Subspace& b) {
    if (auto c = a.n_ <=> b.n_; c != 0) return c;
    return a.basis_ <=> b.basis_;
  }

 private:
  friend class SubspaceStream;
  Subspace(std::size_t n, Matrix basis, std::vector<std::size_t> pivots)
      : n_(n), basis_(std::move(basis)), pivots_(std::move(pivots)) {}

  std::size_t n_ = 0;
  Matrix basis_;
  std::vector<std::size_t> pivots_;
};

bool contains(const Field& field, const Subspace& s, std::span<const FieldElement> v);
bool is_subspace_of(const Field& field, const Subspace& inner, const Subspace& outer);
/// Canonical representative of v + s: v minus its pivot-column components.
Point reduce_mod(const Field& field, const Subspace& s, std::span<const FieldElement> v);
/// Index of the coset v + s among the q^{n-k} cosets, in enumeration order.
std::uint64_t coset_index(const Field& field, const Subspace& s, std::span<const FieldElement> v);
/// Annihilator: the (n-k) x n matrix whose null space is s.
Matrix annihilator(const Field& field, const Subspace& s);
Subspace intersect(const Field& field, const Subspace& a, const Subspace& b);
Subspace join(const Field& field, const Subspace& a, const Subspace& b);

struct Flat {
  Subspace direction;
  Point shift;

  std::size_t rank() const noexcept { return direction.rank(); }

  friend bool operator==(const Flat&, const Flat&) = default;
  friend auto operator<=>(const Flat& a, const Flat& b) {
    if (auto c = a.direction <=> b.direction; c != 0) return c;
    return a.shift <=> b.shift;
  }
};

Flat make_flat(const Field& field, Subspace direction, std::span<const FieldElement> through);
bool flat_contains(const Field& field, const Flat& f, std::span<const FieldElement> point);
/// inner is contained in outer as point sets.
bool flat_within(const Field& field, const Flat& inner, const Flat& outer);

class PointSet {
 public:
  explicit PointSet(AffineSpace space) : space_(std::move(space)) {}
  PointSet(AffineSpace space, std::span<const Point> points);
  static PointSet from_indices(AffineSpace space, std::vector<std::uint64_t> indices);
  static PointSet whole(AffineSpace space);

  const AffineSpace& space() const noexcept { return space_; }
  const Field& field() const noexcept { return space_.field(); }
  std::size_t dim() const noexcept { return space_.dim(); }

  bool insert(std::span<const FieldElement> point);
  bool contains(std::span<const FieldElement> point) const;
  bool contains_index(std::uint64_t index) const;
  std::size_t size() const noexcept { return indices_.size(); }
  bool empty() const noexcept { return indices_.empty(); }

  /// Sorted packed indices.
  const std::vector<std::uint64_t>& indices() const noexcept { return indices_; }
  std::vector<Point> points() const;

  friend bool operator==(const PointSet& a, const PointSet& b) noexcept {
    return a.space_ == b.space_ && a.indices_ == b.indices_;
  }

 private:
  AffineSpace space_;
  std::vector<std::uint64_t> indices_;
};

/// Gaussian binomial coefficient by the exact product formula.
BigInt qbinomial(std::int64_t n, std::int64_t k, const BigInt& q);
/// Number of k-flats in F_q^n.
BigInt flat_count(std::int64_t n, std::int64_t k, const BigInt& q);

/// Rank-k subspaces of F_q^n, each once, ordered by pivot set (lexicographic)
/// and then by free entries (row-major, first entry most significant).
class SubspaceStream {
 public:
  SubspaceStream(Field field, std::size_t n, std::size_t k, const Budget& budget = {});

  std::optional<Subspace> next();
  const BigInt& total() const noexcept { return total_; }

 private:
  bool advance_pivots();
  void reset_free();

  Field field_;
  std::size_t n_;
  std::size_t k_;
  BigInt total_;
  std::vector<std::size_t> pivots_;
  std::vector<std::pair<std::size_t, std::size_t>> free_;  // (row, col)
  std::vector<std::uint32_t> free_values_;
  bool done_ = false;
};

/// Every k-flat once: subspace order, then shift in lexicographic order.
class FlatStream {
 public:
  FlatStream(Field field, std::size_t n, std::size_t k, const Budget& budget = {});

  std::optional<Flat> next();
  const BigInt& total() const noexcept { return total_; }

 private:
  Field field_;
  std::size_t n_;
  SubspaceStream subspaces_;
  std::optional<Subspace> current_;
  std::vector<std::size_t> free_cols_;
  std::uint64_t shift_index_ = 0;
  std::uint64_t shift_count_ = 0;
  BigInt total_;
};

std::vector<Subspace> enumerate_subspaces(const Field& field, std::size_t n, std::size_t k,
                                          const Budget& budget = {});
std::vector<Flat> enumerate_flats(const Field& field, std::size_t n, std::size_t k,
                                  const Budget& budget = {});
/// Rank-r subspaces contained in outer.
std::vector<Subspace> subspaces_within(const Field& field, const Subspace& outer, std::size_t r,
                                       const Budget& budget = {});

/// Smallest flat containing every point. Throws EmptyInput.
Flat span(const PointSet& points);
/// The q^k points of f. Throws BudgetExceeded.
PointSet flat_points(const AffineSpace& space, const Flat& f, const Budget& budget = {});

}  // namespace flab

#include "flab/geometry.hpp"

#include <algorithm>
#include <limits>

#include "flab/error.hpp"

namespace flab {

void Budget::check(const BigInt& count, const std::string& what) const {
  if (count > max_objects) {
    raise(Errc::BudgetExceeded, what + " needs " + count.str() + " objects, budget is " +
                                    std::to_string(max_objects));
  }
}

AffineSpace::AffineSpace(Field field, std::size_t n) : field_(std::move(field)), n_(n), size_(1) {
  const std::uint64_t q = field_.order();
  for (std::size_t i = 0; i < n_; ++i) {
    require(size_ <= (std::uint64_t{1} << 62U) / q, Errc::BadRange, "q^n must stay below 2^62");
    size_ *= q;
  }
}

std::uint64_t AffineSpace::index(std::span<const FieldElement> point) const {
  require(point.size() == n_, Errc::DimensionMismatch,
          "point has " + std::to_string(point.size()) + " coordinates, expected " + std::to_string(n_));
  const std::uint64_t q = field_.order();
  std::uint64_t idx = 0;
  for (auto c : point) idx = idx * q + c.code;
  return idx;
}

Point AffineSpace::point(std::uint64_t index) const {
  const std::uint64_t q = field_.order();
  Point p(n_);
  for (std::size_t i = n_; i-- > 0;) {
    p[i] = FieldElement{static_cast<std::uint32_t>(index % q)};
    index /= q;
  }
  return p;
}

Matrix Matrix::from_rows(std::span<const Point> rows, std::size_t cols) {
  Matrix m(rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    require(rows[r].size() == cols, Errc::DimensionMismatch, "ragged matrix rows");
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

RrefResult rref(const Field& field, Matrix m) {
  RrefResult out;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < m.cols() && lead_row < m.rows(); ++col) {
    std::size_t pr = lead_row;
    while (pr < m.rows() && m.at(pr, col) == Field::zero()) ++pr;
    if (pr == m.rows()) continue;
    if (pr != lead_row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m.at(pr, c), m.at(lead_row, c));
    }
    const FieldElement scale = field.inv(m.at(lead_row, col));
    for (std::size_t c = col; c < m.cols(); ++c) m.at(lead_row, c) = field.mul(m.at(lead_row, c), scale);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == lead_row) continue;
      const FieldElement factor = m.at(r, col);
      if (factor == Field::zero()) continue;
      for (std::size_t c = col; c < m.cols(); ++c) {
        m.at(r, c) = field.sub(m.at(r, c), field.mul(factor, m.at(lead_row, c)));
      }
    }
    out.pivots.push_back(col);
    ++lead_row;
  }
  out.rank = lead_row;
  out.matrix = std::move(m);
  return out;
}

std::vector<Point> null_space(const Field& field, const Matrix& m) {
  const RrefResult r = rref(field, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::vector<Point> basis;
  for (std::size_t f = 0; f < m.cols(); ++f) {
    if (is_pivot[f]) continue;
    Point v(m.cols(), Field::zero());
    v[f] = Field::one();
    for (std::size_t i = 0; i < r.rank; ++i) v[r.pivots[i]] = field.neg(r.matrix.at(i, f));
    basis.push_back(std::move(v));
  }
  return basis;
}

Matrix mat_mul(const Field& field, const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), Errc::DimensionMismatch, "matrix product shape mismatch");
  Matrix out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t l = 0; l < a.cols(); ++l) {
      const FieldElement x = a.at(i, l);
      if (x == Field::zero()) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out.at(i, j) = field.add(out.at(i, j), field.mul(x, b.at(l, j)));
    }
  }
  return out;
}

Point mat_vec(const Field& field, const Matrix& m, std::span<const FieldElement> v) {
  require(v.size() == m.cols(), Errc::DimensionMismatch, "matrix-vector shape mismatch");
  Point out(m.rows(), Field::zero());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    FieldElement acc = Field::zero();
    for (std::size_t j = 0; j < m.cols(); ++j) acc = field.add(acc, field.mul(m.at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

Subspace Subspace::span_of(const Field& field, std::size_t n, std::span<const Point> vectors) {
  RrefResult r = rref(field, Matrix::from_rows(vectors, n));
  Matrix basis(r.rank, n);
  for (std::size_t i = 0; i < r.rank; ++i) {
    std::copy(r.matrix.row(i).begin(), r.matrix.row(i).end(), basis.row(i).begin());
  }
  return Subspace(n, std::move(basis), std::move(r.pivots));
}

Subspace Subspace::zero(std::size_t n) { return Subspace(n, Matrix(0, n), {}); }

Subspace Subspace::full(std::size_t n) {
  Matrix id(n, n);
  std::vector<std::size_t> piv(n);
  for (std::size_t i = 0; i < n; ++i) {
    id.at(i, i) = Field::one();
    piv[i] = i;
  }
  return Subspace(n, std::move(id), std::move(piv));
}

std::vector<std::size_t> Subspace::free_columns() const {
  std::vector<std::size_t> out;
  std::size_t pi = 0;
  for (std::size_t c = 0; c < n_; ++c) {
    if (pi < pivots_.size() && pivots_[pi] == c) {
      ++pi;
    } else {
      out.push_back(c);
    }
  }
  return out;
}

Point reduce_mod(const Field& field, const Subspace& s, std::span<const FieldElement> v) {
  require(v.size() == s.ambient_dim(), Errc::DimensionMismatch, "vector length differs from ambient dimension");
  Point r(v.begin(), v.end());
  const Matrix& b = s.basis();
  for (std::size_t i = 0; i < s.rank(); ++i) {
    const FieldElement c = r[s.pivots()[i]];
    if (c == Field::zero()) continue;
    for (std::size_t j = s.pivots()[i]; j < r.size(); ++j) r[j] = field.sub(r[j], field.mul(c, b.at(i, j)));
  }
  return r;
}

bool contains(const Field& field, const Subspace& s, std::span<const FieldElement> v) {
  const Point r = reduce_mod(field, s, v);
  return std::all_of(r.begin(), r.end(), [](FieldElement c) { return c == Field::zero(); });
}

std::uint64_t coset_index(const Field& field, const Subspace& s, std::span<const FieldElement> v) {
  const Point r = reduce_mod(field, s, v);
  const std::uint64_t q = field.order();
  std::uint64_t idx = 0;
  std::size_t pi = 0;
  for (std::size_t c = 0; c < r.size(); ++c) {
    if (pi < s.pivots().size() && s.pivots()[pi] == c) {
      ++pi;
      continue;
    }
    idx = idx * q + r[c].code;
  }
  return idx;
}

bool is_subspace_of(const Field& field, const Subspace& inner, const Subspace& outer) {
  require(inner.ambient_dim() == outer.ambient_dim(), Errc::DimensionMismatch, "ambient dimensions differ");
  for (std::size_t i = 0; i < inner.rank(); ++i) {
    if (!contains(field, outer, inner.basis().row(i))) return false;
  }
  return true;
}

Matrix annihilator(const Field& field, const Subspace& s) {
  const auto rows = null_space(field, s.basis());
  return Matrix::from_rows(rows, s.ambient_dim());
}

Subspace intersect(const Field& field, const Subspace& a, const Subspace& b) {
  require(a.ambient_dim() == b.ambient_dim(), Errc::DimensionMismatch, "ambient dimensions differ");
  const std::size_t n = a.ambient_dim();
  std::vector<Point> eqs = null_space(field, a.basis());
  for (auto& v : null_space(field, b.basis())) eqs.push_back(std::move(v));
  if (eqs.empty()) return Subspace::full(n);
  const auto sol = null_space(field, Matrix::from_rows(eqs, n));
  return Subspace::span_of(field, n, sol);
}

Subspace join(const Field& field, const Subspace& a, const Subspace& b) {
  require(a.ambient_dim() == b.ambient_dim(), Errc::DimensionMismatch, "ambient dimensions differ");
  std::vector<Point> rows;
  for (std::size_t i = 0; i < a.rank(); ++i) rows.emplace_back(a.basis().row(i).begin(), a.basis().row(i).end());
  for (std::size_t i = 0; i < b.rank(); ++i) rows.emplace_back(b.basis().row(i).begin(), b.basis().row(i).end());
  return Subspace::span_of(field, a.ambient_dim(), rows);
}

Flat make_flat(const Field& field, Subspace direction, std::span<const FieldElement> through) {
  Point shift = reduce_mod(field, direction, through);
  return Flat{std::move(direction), std::move(shift)};
}

bool flat_contains(const Field& field, const Flat& f, std::span<const FieldElement> point) {
  return reduce_mod(field, f.direction, point) == f.shift;
}

bool flat_within(const Field& field, const Flat& inner, const Flat& outer) {
  return is_subspace_of(field, inner.direction, outer.direction) && flat_contains(field, outer, inner.shift);
}

PointSet::PointSet(AffineSpace space, std::span<const Point> points) : space_(std::move(space)) {
  indices_.reserve(points.size());
  for (const auto& p : points) indices_.push_back(space_.index(p));
  std::sort(indices_.begin(), indices_.end());
  indices_.erase(std::unique(indices_.begin(), indices_.end()), indices_.end());
}

PointSet PointSet::from_indices(AffineSpace space, std::vector<std::uint64_t> indices) {
  PointSet s(std::move(space));
  for (auto i : indices) require(i < s.space_.size(), Errc::BadRange, "point index out of range");
  std::sort(indices.begin(), indices.end());
  indices.erase(std::unique(indices.begin(), indices.end()), indices.end());
  s.indices_ = std::move(indices);
  return s;
}

PointSet PointSet::whole(AffineSpace space) {
  PointSet s(std::move(space));
  s.indices_.resize(s.space_.size());
  for (std::uint64_t i = 0; i < s.space_.size(); ++i) s.indices_[i] = i;
  return s;
}

bool PointSet::insert(std::span<const FieldElement> point) {
  const auto idx = space_.index(point);
  const auto it = std::lower_bound(indices_.begin(), indices_.end(), idx);
  if (it != indices_.end() && *it == idx) return false;
  indices_.insert(it, idx);
  return true;
}

bool PointSet::contains(std::span<const FieldElement> point) const { return contains_index(space_.index(point)); }

bool PointSet::contains_index(std::uint64_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

std::vector<Point> PointSet::points() const {
  std::vector<Point> out;
  out.reserve(indices_.size());
  for (auto i : indices_) out.push_back(space_.point(i));
  return out;
}

BigInt qbinomial(std::int64_t n, std::int64_t k, const BigInt& q) {
  require(n >= 0 && k >= 0 && k <= n, Errc::BadRange,
          "q-binomial needs 0 <= k <= n, got n=" + std::to_string(n) + " k=" + std::to_string(k));
  require(q >= 2, Errc::BadRange, "q-binomial needs q >= 2");
  BigInt num = 1;
  BigInt den = 1;
  for (std::int64_t i = 0; i < k; ++i) {
    num *= pow_int(q, static_cast<std::uint64_t>(n - i)) - 1;
    den *= pow_int(q, static_cast<std::uint64_t>(i + 1)) - 1;
  }
  return num / den;
}

BigInt flat_count(std::int64_t n, std::int64_t k, const BigInt& q) {
  return pow_int(q, static_cast<std::uint64_t>(n - k)) * qbinomial(n, k, q);
}

SubspaceStream::SubspaceStream(Field field, std::size_t n, std::size_t k, const Budget& budget)
    : field_(std::move(field)), n_(n), k_(k) {
  require(k <= n, Errc::BadRange, "subspace rank exceeds ambient dimension");
  total_ = qbinomial(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k), field_.order());
  budget.check(total_, "enumerating rank-" + std::to_string(k) + " subspaces");
  pivots_.resize(k);
  for (std::size_t i = 0; i < k; ++i) pivots_[i] = i;
  reset_free();
}

void SubspaceStream::reset_free() {
  free_.clear();
  std::vector<bool> is_pivot(n_, false);
  for (auto p : pivots_) is_pivot[p] = true;
  for (std::size_t i = 0; i < k_; ++i) {
    for (std::size_t j = pivots_[i] + 1; j < n_; ++j) {
      if (!is_pivot[j]) free_.emplace_back(i, j);
    }
  }
  free_values_.assign(free_.size(), 0);
}

bool SubspaceStream::advance_pivots() {
  if (k_ == 0) return false;
  std::size_t i = k_;
  while (i-- > 0) {
    if (pivots_[i] < n_ - k_ + i) {
      ++pivots_[i];
      for (std::size_t j = i + 1; j < k_; ++j) pivots_[j] = pivots_[j - 1] + 1;
      return true;
    }
  }
  return false;
}

std::optional<Subspace> SubspaceStream::next() {
  if (done_) return std::nullopt;
  Matrix basis(k_, n_);
  for (std::size_t i = 0; i < k_; ++i) basis.at(i, pivots_[i]) = Field::one();
  for (std::size_t f = 0; f < free_.size(); ++f) basis.at(free_[f].first, free_[f].second) = FieldElement{free_values_[f]};
  Subspace out(n_, std::move(basis), pivots_);

  // Odometer over free entries, last entry least significant.
  const std::uint32_t q = field_.order();
  std::size_t f = free_values_.size();
  bool carried = true;
  while (f-- > 0) {
    if (++free_values_[f] < q) {
      carried = false;
      break;
    }
    free_values_[f] = 0;
  }
  if (carried) {
    if (advance_pivots()) {
      reset_free();
    } else {
      done_ = true;
    }
  }
  return out;
}

FlatStream::FlatStream(Field field, std::size_t n, std::size_t k, const Budget& budget)
    : field_(field), n_(n), subspaces_(field, n, k, budget) {
  total_ = flat_count(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k), field_.order());
  budget.check(total_, "enumerating " + std::to_string(k) + "-flats");
  shift_count_ = 1;
  for (std::size_t i = k; i < n; ++i) shift_count_ *= field_.order();
}

std::optional<Flat> FlatStream::next() {
  if (!current_ || shift_index_ == shift_count_) {
    current_ = subspaces_.next();
    if (!current_) return std::nullopt;
    free_cols_ = current_->free_columns();
    shift_index_ = 0;
  }
  Point shift(n_, Field::zero());
  std::uint64_t idx = shift_index_++;
  const std::uint32_t q = field_.order();
  for (std::size_t j = free_cols_.size(); j-- > 0;) {
    shift[free_cols_[j]] = FieldElement{static_cast<std::uint32_t>(idx % q)};
    idx /= q;
  }
  return Flat{*current_, std::move(shift)};
}

std::vector<Subspace> enumerate_subspaces(const Field& field, std::size_t n, std::size_t k, const Budget& budget) {
  SubspaceStream stream(field, n, k, budget);
  std::vector<Subspace> out;
  out.reserve(stream.total().convert_to<std::size_t>());
  while (auto s = stream.next()) out.push_back(std::move(*s));
  return out;
}

std::vector<Flat> enumerate_flats(const Field& field, std::size_t n, std::size_t k, const Budget& budget) {
  FlatStream stream(field, n, k, budget);
  std::vector<Flat> out;
  out.reserve(stream.total().convert_to<std::size_t>());
  while (auto f = stream.next()) out.push_back(std::move(*f));
  return out;
}

std::vector<Subspace> subspaces_within(const Field& field, const Subspace& outer, std::size_t r, const Budget& budget) {
  const std::size_t n = outer.ambient_dim();
  std::vector<Subspace> out;
  for (const auto& local : enumerate_subspaces(field, outer.rank(), r, budget)) {
    // Local coordinates are coefficients on the outer basis rows.
    const Matrix image = mat_mul(field, local.basis(), outer.basis());
    std::vector<Point> rows;
    for (std::size_t i = 0; i < image.rows(); ++i) rows.emplace_back(image.row(i).begin(), image.row(i).end());
    out.push_back(Subspace::span_of(field, n, rows));
  }
  return out;
}

Flat span(const PointSet& points) {
  require(!points.empty(), Errc::EmptyInput, "span of an empty point set");
  const Field& field = points.field();
  const auto pts = points.points();
  std::vector<Point> diffs;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    Point d(pts[i].size());
    for (std::size_t j = 0; j < d.size(); ++j) d[j] = field.sub(pts[i][j], pts[0][j]);
    diffs.push_back(std::move(d));
  }
  return make_flat(field, Subspace::span_of(field, points.dim(), diffs), pts[0]);
}

PointSet flat_points(const AffineSpace& space, const Flat& f, const Budget& budget) {
  require(f.direction.ambient_dim() == space.dim(), Errc::DimensionMismatch, "flat lives in another space");
  const Field& field = space.field();
  const std::size_t k = f.rank();
  budget.check(pow_int(field.order(), k), "listing flat points");
  std::uint64_t count = 1;
  for (std::size_t i = 0; i < k; ++i) count *= field.order();
  std::vector<std::uint64_t> indices;
  indices.reserve(count);
  for (std::uint64_t c = 0; c < count; ++c) {
    std::uint64_t x = c;
    Point p = f.shift;
    for (std::size_t i = k; i-- > 0;) {
      const FieldElement a{static_cast<std::uint32_t>(x % field.order())};
      x /= field.order();
      if (a == Field::zero()) continue;
      for (std::size_t j = 0; j < p.size(); ++j) p[j] = field.add(p[j], field.mul(a, f.direction.basis().at(i, j)));
    }
    indices.push_back(space.index(p));
  }
  return PointSet::from_indices(space, std::move(indices));
}

}  // namespace flab

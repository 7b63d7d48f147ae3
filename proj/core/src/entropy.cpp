#include "flab/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "flab/error.hpp"
#include "flab/parallel.hpp"

namespace flab {

namespace {

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  require(a <= std::numeric_limits<std::uint64_t>::max() - b, Errc::BadRange, "distribution total overflows 64 bits");
  return a + b;
}

}  // namespace

RationalDistribution RationalDistribution::uniform(const PointSet& support) {
  require(!support.empty(), Errc::EmptyInput, "uniform distribution on an empty set");
  RationalDistribution d(support.space());
  for (auto i : support.indices()) d.add_index(i, 1);
  return d;
}

void RationalDistribution::add(std::span<const FieldElement> point, std::uint64_t weight) {
  add_index(space_.index(point), weight);
}

void RationalDistribution::add_index(std::uint64_t index, std::uint64_t weight) {
  require(index < space_.size(), Errc::BadRange, "point index out of range");
  if (weight == 0) return;
  total_ = checked_add(total_, weight);
  auto& w = weights_[index];
  w += weight;
}

std::uint64_t RationalDistribution::weight_of(std::span<const FieldElement> point) const {
  const auto it = weights_.find(space_.index(point));
  return it == weights_.end() ? 0 : it->second;
}

double EntropyValue::approx(std::uint32_t q) const {
  return std::log(total.convert_to<double>() / max_weight.convert_to<double>()) / std::log(static_cast<double>(q));
}

std::strong_ordering compare_entropy(const EntropyValue& a, const EntropyValue& b) {
  // log(Ta/Ma) vs log(Tb/Mb)  <=>  Ta*Mb vs Tb*Ma
  const BigInt lhs = a.total * b.max_weight;
  const BigInt rhs = b.total * a.max_weight;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

EntropyValue min_entropy(const RationalDistribution& dist) {
  require(!dist.empty(), Errc::EmptyInput, "min-entropy of an empty distribution");
  std::uint64_t best = 0;
  for (const auto& [idx, w] : dist.weights()) best = std::max(best, w);
  return EntropyValue{best, dist.total()};
}

OntoLinearMap OntoLinearMap::from_matrix(const Field& field, Matrix matrix) {
  const RrefResult r = rref(field, matrix);
  require(r.rank == matrix.rows(), Errc::BadRange, "linear map is not onto");
  const auto null = null_space(field, matrix);
  Subspace kernel = Subspace::span_of(field, matrix.cols(), null);
  return OntoLinearMap(std::move(matrix), std::move(kernel));
}

OntoLinearMap OntoLinearMap::from_kernel(const Field& field, const Subspace& kernel) {
  return OntoLinearMap(annihilator(field, kernel), kernel);
}

OntoLinearMap OntoLinearMap::compose_after(const Field& field, const OntoLinearMap& first) const {
  require(domain_dim() == first.codomain_dim(), Errc::DimensionMismatch, "maps do not compose");
  return from_matrix(field, mat_mul(field, matrix_, first.matrix_));
}

RationalDistribution pushforward(const RationalDistribution& dist, const OntoLinearMap& map) {
  require(map.domain_dim() == dist.dim(), Errc::DimensionMismatch,
          "map domain has dimension " + std::to_string(map.domain_dim()) + ", distribution lives in dimension " +
              std::to_string(dist.dim()));
  const Field& field = dist.field();
  RationalDistribution out(AffineSpace(field, map.codomain_dim()));
  for (const auto& [idx, w] : dist.weights()) {
    const Point x = dist.space().point(idx);
    out.add(mat_vec(field, map.matrix(), x), w);
  }
  return out;
}

namespace {

struct KernelScore {
  std::uint64_t max_weight = 0;
  std::uint64_t argmax = 0;
};

KernelScore score(const RationalDistribution& image) {
  KernelScore s;
  for (const auto& [idx, w] : image.weights()) {
    if (w > s.max_weight) {
      s.max_weight = w;
      s.argmax = idx;
    }
  }
  return s;
}

void check_projection_args(const RationalDistribution& dist, std::size_t k) {
  require(!dist.empty(), Errc::EmptyInput, "projection of an empty distribution");
  require(k >= 1 && k < dist.dim(), Errc::BadRange,
          "projection rank k=" + std::to_string(k) + " must satisfy 1 <= k < n=" + std::to_string(dist.dim()));
}

}  // namespace

ProjectionResult best_projection(const RationalDistribution& dist, std::size_t k, const Budget& budget,
                                 unsigned threads) {
  check_projection_args(dist, k);
  const Field& field = dist.field();
  const auto kernels = enumerate_subspaces(field, dist.dim(), k, budget);
  std::vector<KernelScore> scores(kernels.size());
  parallel_for(kernels.size(), threads, [&](std::size_t i) {
    scores[i] = score(pushforward(dist, OntoLinearMap::from_kernel(field, kernels[i])));
  });

  std::size_t best = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i].max_weight < scores[best].max_weight) best = i;
  }
  OntoLinearMap map = OntoLinearMap::from_kernel(field, kernels[best]);
  const AffineSpace codomain(field, map.codomain_dim());
  EntropyValue attained{scores[best].max_weight, dist.total()};
  ProjectionResult result{EntropicWitness{std::move(map), codomain.point(scores[best].argmax), attained}, attained,
                          kernels.size()};
  return result;
}

bool entropic_bound_holds(const RationalDistribution& dist, std::size_t k, const BigInt& max_pushforward_weight,
                          BigInt* lhs, BigInt* rhs) {
  const std::uint64_t n = dist.dim();
  const BigInt q = dist.field().order();
  const EntropyValue h = min_entropy(dist);
  // (g/S)^n <= (f(v)/S)^{n-k} ((2q-1)/q)^{nk}, cleared of denominators.
  const BigInt l = pow_int(max_pushforward_weight, n) * pow_int(q, n * k);
  const BigInt r = pow_int(h.max_weight, n - k) * pow_int(h.total, k) * pow_int(2 * q - 1, n * k);
  if (lhs != nullptr) *lhs = l;
  if (rhs != nullptr) *rhs = r;
  return l <= r;
}

EntropicBoundReport check_entropic_bound(const RationalDistribution& dist, std::size_t k, const Budget& budget,
                                         unsigned threads) {
  ProjectionResult best = best_projection(dist, k, budget, threads);
  EntropicBoundReport report;
  report.ok = entropic_bound_holds(dist, k, best.entropy.max_weight, &report.lhs, &report.rhs);
  report.margin = report.rhs - report.lhs;
  report.witness = std::move(best.witness);
  return report;
}

RecursionReport check_recursion(const RationalDistribution& dist, std::size_t k, const Budget& budget,
                                unsigned threads) {
  check_projection_args(dist, k);
  const Field& field = dist.field();
  RecursionReport report;
  RationalDistribution current = dist;
  std::optional<OntoLinearMap> composed;
  for (std::size_t step = 0; step < k; ++step) {
    ProjectionResult stage = best_projection(current, 1, budget, threads);
    report.stages.push_back(stage.entropy);
    current = pushforward(current, stage.witness.map);
    composed = composed ? stage.witness.map.compose_after(field, *composed) : stage.witness.map;
  }
  report.composed_map = std::move(*composed);
  report.composed = min_entropy(current);
  report.direct = best_projection(dist, k, budget, threads).entropy;
  report.composed_ok = entropic_bound_holds(dist, k, report.composed.max_weight);
  report.direct_ok = entropic_bound_holds(dist, k, report.direct.max_weight);
  report.composed_not_above_direct = compare_entropy(report.composed, report.direct) <= 0;
  return report;
}

IntegerFunction IntegerFunction::from_distribution(const RationalDistribution& dist) {
  IntegerFunction f(dist.space());
  for (const auto& [idx, w] : dist.weights()) {
    require(w <= static_cast<std::uint64_t>(std::numeric_limits<std::int64_t>::max()), Errc::BadRange,
            "weight exceeds the integer-function range");
    f.set_index(idx, static_cast<std::int64_t>(w));
  }
  return f;
}

void IntegerFunction::set(std::span<const FieldElement> point, std::int64_t value) {
  set_index(space_.index(point), value);
}

void IntegerFunction::set_index(std::uint64_t index, std::int64_t value) {
  require(index < space_.size(), Errc::BadRange, "point index out of range");
  if (value == 0) {
    values_.erase(index);
  } else {
    values_[index] = value;
  }
}

std::int64_t IntegerFunction::value_index(std::uint64_t index) const {
  const auto it = values_.find(index);
  return it == values_.end() ? 0 : it->second;
}

BigInt heavy_line_level(const IntegerFunction& f, const Budget& budget) {
  const Field& field = f.space().field();
  const std::size_t n = f.space().dim();
  require(n >= 1, Errc::BadRange, "heavy lines need n >= 1");
  std::optional<BigInt> level;
  SubspaceStream directions(field, n, 1, budget);
  while (auto dir = directions.next()) {
    std::map<std::uint64_t, BigInt> line_sums;
    for (const auto& [idx, v] : f.values()) {
      line_sums[coset_index(field, *dir, f.space().point(idx))] += v < 0 ? -BigInt(v) : BigInt(v);
    }
    BigInt best = 0;
    for (const auto& [line, s] : line_sums) best = std::max(best, s);
    if (!level || best < *level) level = best;
  }
  return *level;
}

NormBoundReport norm_bound_check(const IntegerFunction& f, const BigInt& r, const Budget& budget) {
  require(r >= 0, Errc::BadRange, "r must be nonnegative");
  const std::uint64_t n = f.space().dim();
  const BigInt q = f.space().field().order();
  NormBoundReport report;
  report.hypothesis_ok = heavy_line_level(f, budget) >= r;
  for (const auto& [idx, v] : f.values()) report.sum += pow_int(v < 0 ? -BigInt(v) : BigInt(v), n);
  report.bound_num = pow_int(r, n) * pow_int(q, n);
  report.bound_den = pow_int(2 * q - 1, n);
  report.ok = report.bound_den * report.sum >= report.bound_num;
  return report;
}

KeyBoundReport key_bound_check(const IntegerFunction& f, std::uint64_t r, std::uint64_t m) {
  require(r > 0 && m > 0 && m % r == 0, Errc::BadRange, "m must be a positive multiple of r > 0");
  const std::uint64_t n = f.space().dim();
  const std::uint64_t q = f.space().field().order();
  KeyBoundReport report;
  report.multiplicity_scale = BigInt(m) * (2 * q - 1) / r;
  report.degree = BigInt(m) * q - r;
  const auto scale = report.multiplicity_scale.convert_to<std::uint64_t>();
  for (const auto& [idx, v] : f.values()) {
    const std::uint64_t a = static_cast<std::uint64_t>(v < 0 ? -v : v);
    report.lhs += binomial(scale * a + n - 1, n);
  }
  report.rhs = binomial(report.degree.convert_to<std::uint64_t>() + n, n);
  report.holds = report.lhs >= report.rhs;
  return report;
}

std::optional<std::uint64_t> key_bound_threshold(const IntegerFunction& f, std::uint64_t r, std::uint64_t max_multiple) {
  for (std::uint64_t j = 1; j <= max_multiple; ++j) {
    if (key_bound_check(f, r, j * r).holds) return j * r;
  }
  return std::nullopt;
}

namespace {

// Largest b with b^j <= x.
BigInt integer_root(const BigInt& x, unsigned j) {
  BigInt lo = 1;
  BigInt hi = x;
  while (lo < hi) {
    const BigInt mid = (lo + hi + 1) / 2;
    if (pow_int(mid, j) <= x) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return lo;
}

}  // namespace

LogConstant LogConstant::normalized() const {
  require(base >= 2, Errc::BadRange, "constant base must be >= 2");
  if (exponent == 0) return LogConstant{2, 0};
  const unsigned max_j = static_cast<unsigned>(boost::multiprecision::msb(base));
  for (unsigned j = max_j; j >= 2; --j) {
    const BigInt b = integer_root(base, j);
    if (pow_int(b, j) == base) return LogConstant{b, exponent * j};
  }
  return *this;
}

double LogConstant::as_constant() const { return std::pow(base.convert_to<double>(), -to_double(exponent)); }

double LogConstant::as_loss(std::uint32_t q) const {
  return to_double(exponent) * std::log(base.convert_to<double>()) / std::log(static_cast<double>(q));
}

bool operator==(const LogConstant& a, const LogConstant& b) {
  const LogConstant x = a.normalized();
  const LogConstant y = b.normalized();
  return x.base == y.base && x.exponent == y.exponent;
}

LogConstant ab_constants(ConstantTransform direction, const LogConstant& value, std::size_t n, std::size_t k) {
  require(k >= 1 && k < n, Errc::BadRange, "need 1 <= k < n");
  require(value.base >= 2, Errc::BadRange, "constant base must be >= 2");
  require(value.exponent >= 0, Errc::BadRange,
          direction == ConstantTransform::AtoB ? "C must lie in (0, 1]" : "D must be nonnegative");
  const Rational ratio(static_cast<long long>(k), static_cast<long long>(n));
  if (direction == ConstantTransform::AtoB) return LogConstant{value.base, value.exponent * ratio};
  return LogConstant{value.base, value.exponent / ratio};
}

LinearMapStatementReport check_linear_map_statement(const PointSet& s, std::size_t k, const LogConstant& loss,
                                                    const Budget& budget, unsigned threads) {
  require(loss.exponent >= 0 && loss.base >= 2, Errc::BadRange, "entropy loss must be nonnegative");
  LinearMapStatementReport report;
  report.projection = best_projection(RationalDistribution::uniform(s), k, budget, threads);
  const std::uint64_t n = s.dim();
  const BigInt size = s.size();
  const BigInt& g = report.projection.entropy.max_weight;
  // n log(|S|/g) + n D >= (n-k) log|S|, raised to the exponent's denominator c.
  const auto a = boost::multiprecision::numerator(loss.exponent).convert_to<std::uint64_t>();
  const auto c = boost::multiprecision::denominator(loss.exponent).convert_to<std::uint64_t>();
  const BigInt lhs = pow_int(size, n * c) * pow_int(loss.base, n * a);
  const BigInt rhs = pow_int(g, n * c) * pow_int(size, (n - k) * c);
  report.ok = lhs >= rhs;
  return report;
}

}  // namespace flab

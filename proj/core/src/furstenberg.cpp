#include "flab/furstenberg.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>

#include "flab/error.hpp"
#include "flab/parallel.hpp"

namespace flab {

namespace {

void check_params(std::uint64_t q, std::size_t n, std::size_t k, std::uint64_t m) {
  require(k >= 1 && k < n, Errc::BadRange,
          "rank k=" + std::to_string(k) + " must satisfy 1 <= k < n=" + std::to_string(n));
  require(m >= 1 && BigInt(m) <= pow_int(q, k), Errc::BadRange,
          "m=" + std::to_string(m) + " must satisfy 1 <= m <= q^k");
}

struct Translate {
  std::uint64_t count = 0;
  std::uint64_t coset = 0;
  std::optional<Point> through;
};

// Richest coset of dir among the given points; first coset index on ties.
Translate best_translate(const Field& field, const Subspace& dir, const std::vector<Point>& points) {
  std::map<std::uint64_t, std::pair<std::uint64_t, std::size_t>> per_coset;  // coset -> (count, first point)
  for (std::size_t i = 0; i < points.size(); ++i) {
    auto [it, fresh] = per_coset.try_emplace(coset_index(field, dir, points[i]), 0, i);
    ++it->second.first;
  }
  Translate best;
  for (const auto& [coset, entry] : per_coset) {
    if (entry.first > best.count) best = Translate{entry.first, coset, points[entry.second]};
  }
  return best;
}

}  // namespace

FurstenbergInstance::FurstenbergInstance(Field field, std::size_t n, std::size_t k, std::uint64_t m)
    : field_(std::move(field)), n_(n), k_(k), m_(m) {
  check_params(field_.order(), n, k, m);
}

FurstenbergVerdict is_furstenberg(const PointSet& s, std::size_t k, std::uint64_t m, const Budget& budget,
                                  unsigned threads) {
  const Field& field = s.field();
  const std::size_t n = s.dim();
  check_params(field.order(), n, k, m);
  budget.check(qbinomial(n, k, field.order()) * pow_int(field.order(), n - k), "direction-coset pairs");

  const auto directions = enumerate_subspaces(field, n, k, budget);
  const auto points = s.points();
  std::vector<Translate> best(directions.size());
  parallel_for(directions.size(), threads,
               [&](std::size_t i) { best[i] = best_translate(field, directions[i], points); });

  FurstenbergVerdict verdict;
  for (std::size_t i = 0; i < directions.size(); ++i) {
    if (best[i].count < m) {
      verdict.failing = directions[i];
      return verdict;
    }
  }
  verdict.ok = true;
  verdict.witness.reserve(directions.size());
  for (std::size_t i = 0; i < directions.size(); ++i) {
    Flat flat = make_flat(field, directions[i], *best[i].through);
    verdict.witness.push_back(WitnessEntry{directions[i], std::move(flat), best[i].count});
  }
  return verdict;
}

bool witness_verifies(const PointSet& s, const WitnessFamily& witness, std::uint64_t m) {
  const Field& field = s.field();
  for (const auto& entry : witness) {
    if (entry.flat.direction != entry.direction) return false;
    std::uint64_t count = 0;
    for (const auto& p : s.points()) count += flat_contains(field, entry.flat, p) ? 1 : 0;
    if (count < m || count != entry.count) return false;
  }
  return true;
}

double BoundValue::approx() const {
  const double base = std::pow(std::max(0.0, to_double(value)), 1.0 / static_cast<double>(root));
  return base - std::sqrt(to_double(radicand));
}

bool BoundValue::le(const BigInt& t) const {
  if (radicand == 0) {
    if (value <= 0) return true;
    if (t < 0) return false;
    return value <= Rational(pow_int(t, root));
  }
  // value - sqrt(R) <= t  <=>  value - t <= sqrt(R)
  const Rational gap = value - Rational(t);
  return gap <= 0 || gap * gap <= radicand;
}

bool BoundValue::ge(const BigInt& t) const {
  if (radicand == 0) {
    if (t <= 0) return root > 1 || value >= Rational(t);
    return value >= Rational(pow_int(t, root));
  }
  const Rational gap = value - Rational(t);
  return gap >= 0 && gap * gap >= radicand;
}

bool BoundRow::satisfied_by(const BigInt& t) const {
  if (!applicable) return true;
  return kind == BoundKind::Lower ? rhs.le(t) : rhs.ge(t);
}

BigInt BoundReport::best_lower() const {
  BigInt best = 1;
  for (const auto& row : rows) {
    if (!row.applicable || row.kind != BoundKind::Lower) continue;
    BigInt t(std::max(0.0, std::floor(row.rhs.approx()) - 2.0));
    while (!row.rhs.le(t)) ++t;
    while (t > 0 && row.rhs.le(t - 1)) --t;
    best = std::max(best, t);
  }
  return best;
}

BigInt BoundReport::best_upper() const {
  std::optional<BigInt> best;
  for (const auto& row : rows) {
    if (!row.applicable || row.kind != BoundKind::Upper) continue;
    BigInt t(std::max(0.0, std::floor(row.rhs.approx()) + 2.0));
    while (t > 0 && !row.rhs.ge(t)) --t;
    while (row.rhs.ge(t + 1)) ++t;
    if (!best || t < *best) best = t;
  }
  return *best;
}

namespace {

// q^e for a possibly negative exponent.
Rational qpow(std::uint64_t q, std::int64_t e) { return pow_rat(Rational(BigInt(q)), e); }

}  // namespace

BoundValue pure_incidence_bound(std::uint64_t q, std::size_t n, std::size_t k, std::uint64_t m) {
  const auto nn = static_cast<std::int64_t>(n);
  const auto kk = static_cast<std::int64_t>(k);
  const Rational mq = Rational(BigInt(m)) * qpow(q, nn - kk);
  // sqrt(q^{n-k}/m) * m q^{n-k} = sqrt(m q^{3(n-k)})
  return BoundValue{(1 - qpow(q, nn - 2 * kk)) * mq, 1, Rational(BigInt(m)) * qpow(q, 3 * (nn - kk))};
}

BoundReport bound_table(const FurstenbergInstance& inst, const std::optional<Rational>& epsilon) {
  if (epsilon) {
    require(*epsilon > 0 && *epsilon < 1, Errc::BadEpsilon,
            "epsilon=" + to_fraction_string(*epsilon) + " must lie in (0, 1)");
  }
  const std::uint64_t q = inst.q();
  const std::size_t n = inst.n();
  const std::size_t k = inst.k();
  const auto nn = static_cast<std::int64_t>(n);
  const auto kk = static_cast<std::int64_t>(k);
  const BigInt m = inst.m();
  const Rational mr(m);
  const BigInt qk = pow_int(q, k);
  const bool full = m == qk;

  BoundReport report{inst, {}};
  auto& rows = report.rows;

  if (n % k == 0) {
    rows.push_back({"recursive_lower", BoundKind::Lower, {Rational(pow_int(m, n / k), pow_int(2, n))},
                    "m^{n/k}/2^n", true});
  } else {
    rows.push_back({"recursive_lower", BoundKind::Lower, {Rational(pow_int(m, n), pow_int(2, n * k)), k},
                    "(m^n/2^{nk})^{1/k}", true});
  }

  if (epsilon) {
    const Rational& eps = *epsilon;
    const bool hyp = k >= 2 && mr * eps * eps >= Rational(pow_int(2, n + 7 - k) * q);
    rows.push_back({"large_m_lower", BoundKind::Lower, {(1 - eps) * mr * qpow(q, nn - kk)},
                    "(1-eps) m q^{n-k}", hyp});
  } else {
    rows.push_back({"large_m_lower", BoundKind::Lower, {}, "requires epsilon", false});
  }

  rows.push_back({"incidence_lower", BoundKind::Lower, pure_incidence_bound(q, n, k, inst.m()),
                  "value - sqrt(radicand)", 2 * k > n && pow_int(q, n - k) < m});

  if (n % k == 0) {
    rows.push_back({"divisible_lower", BoundKind::Lower, {Rational(pow_int(m, n / k), pow_int(2, n / k))},
                    "m^{n/k}/2^{n/k}", true});
  } else {
    rows.push_back({"divisible_lower", BoundKind::Lower, {Rational(pow_int(m, n), pow_int(2, n)), k},
                    "(m^n/2^n)^{1/k}; needs k | n", false});
  }

  rows.push_back({"kakeya_lower", BoundKind::Lower, {Rational(pow_int(q, n), pow_int(2, n))}, "q^n/2^n",
                  k == 1 && m == q});

  rows.push_back({"full_furstenberg_lower", BoundKind::Lower,
                  {pow_rat(Rational(qk * q, qk + q - 1), nn)}, "(q^{k+1}/(q^k+q-1))^n", full});

  rows.push_back({"full_furstenberg_upper", BoundKind::Upper,
                  {pow_rat(1 - Rational(BigInt(q) - 3, 2 * qk), nn / (kk + 1)) * qpow(q, nn)},
                  "(1-(q-3)/(2q^k))^{floor(n/(k+1))} q^n", full});

  rows.push_back({"general_lower", BoundKind::Lower, {}, "C m^{n/k} with C not explicit", false});

  rows.push_back({"trivial_upper", BoundKind::Upper, {mr * qpow(q, nn - kk)}, "m q^{n-k}", true});
  return report;
}

PointSet trivial_construction(const FurstenbergInstance& inst) {
  const AffineSpace space(inst.field(), inst.n());
  const BigInt size = BigInt(inst.m()) * pow_int(inst.q(), inst.n() - inst.k());
  require(size <= space.size(), Errc::BadSize, "m q^{n-k} exceeds q^n");
  std::vector<std::uint64_t> indices(size.convert_to<std::uint64_t>());
  for (std::uint64_t i = 0; i < indices.size(); ++i) indices[i] = i;
  return PointSet::from_indices(space, std::move(indices));
}

namespace {

constexpr std::uint64_t kExactLimit = 16;

struct BudgetAbort {};

// Subsets of a space with at most 16 points, as bitmasks over point indices.
class MaskSearch {
 public:
  MaskSearch(const FurstenbergInstance& inst, const Budget& budget) : m_(inst.m()), cap_(budget.max_objects) {
    const AffineSpace space(inst.field(), inst.n());
    points_ = static_cast<unsigned>(space.size());
    for (const auto& dir : enumerate_subspaces(inst.field(), inst.n(), inst.k(), budget)) {
      std::vector<std::uint32_t> masks(pow_int(inst.q(), inst.n() - inst.k()).convert_to<std::size_t>(), 0);
      for (std::uint64_t i = 0; i < space.size(); ++i) {
        masks[coset_index(inst.field(), dir, space.point(i))] |= 1u << i;
      }
      cosets_.push_back(std::move(masks));
    }
    // The translate of the first direction through the origin (index 0).
    for (auto mask : cosets_.front()) {
      if (mask & 1u) anchor_ = mask;
    }
  }

  unsigned points() const noexcept { return points_; }

  // Smallest-first DFS for a Furstenberg set of exactly t points whose least
  // index is `first`.
  std::optional<std::uint32_t> branch(unsigned t, unsigned first) {
    found_.reset();
    dfs(1u << first, first + 1, 1, t);
    return found_;
  }

  std::uint64_t nodes() const noexcept { return nodes_; }
  void share_counter(std::atomic<std::uint64_t>* shared) { shared_ = shared; }

 private:
  bool feasible(std::uint32_t mask, std::uint32_t avail, unsigned slots) const {
    const auto pc = [](std::uint32_t x) { return static_cast<unsigned>(std::popcount(x)); };
    if (pc(mask & anchor_) + std::min(slots, pc(avail & anchor_)) < m_) return false;
    for (const auto& dir : cosets_) {
      bool any = false;
      for (auto c : dir) {
        if (pc(mask & c) + std::min(slots, pc(avail & c)) >= m_) {
          any = true;
          break;
        }
      }
      if (!any) return false;
    }
    return true;
  }

  void dfs(std::uint32_t mask, unsigned next, unsigned chosen, unsigned t) {
    if (found_) return;
    ++nodes_;
    if (shared_ != nullptr && shared_->fetch_add(1, std::memory_order_relaxed) >= cap_) throw BudgetAbort{};
    const std::uint32_t avail = ((1u << points_) - 1) & ~((1u << next) - 1);
    if (chosen == t) {
      if (feasible(mask, 0, 0)) found_ = mask;
      return;
    }
    if (points_ - next < t - chosen || !feasible(mask, avail, t - chosen)) return;
    dfs(mask | (1u << next), next + 1, chosen + 1, t);
    dfs(mask, next + 1, chosen, t);
  }

  unsigned m_;
  std::uint64_t cap_;
  unsigned points_ = 0;
  std::vector<std::vector<std::uint32_t>> cosets_;
  std::uint32_t anchor_ = 0;
  std::optional<std::uint32_t> found_;
  std::uint64_t nodes_ = 0;
  std::atomic<std::uint64_t>* shared_ = nullptr;
};

PointSet mask_to_set(const AffineSpace& space, std::uint32_t mask) {
  std::vector<std::uint64_t> indices;
  for (unsigned i = 0; i < 32; ++i) {
    if (mask & (1u << i)) indices.push_back(i);
  }
  return PointSet::from_indices(space, std::move(indices));
}

std::optional<ExtremalResult> exact_search(const FurstenbergInstance& inst, const Budget& budget, unsigned threads) {
  const AffineSpace space(inst.field(), inst.n());
  const MaskSearch prototype(inst, budget);
  const unsigned total = prototype.points();
  const auto upper = static_cast<unsigned>(inst.m() * pow_int(inst.q(), inst.n() - inst.k()).convert_to<std::uint64_t>());
  std::atomic<std::uint64_t> counter{0};
  ExtremalResult result;
  result.exact = true;
  try {
    for (unsigned t = static_cast<unsigned>(inst.m()); t <= upper; ++t) {
      std::vector<std::optional<std::uint32_t>> hits(total);
      std::vector<std::uint64_t> nodes(total, 0);
      parallel_for(total, threads, [&](std::size_t first) {
        MaskSearch search = prototype;
        search.share_counter(&counter);
        hits[first] = search.branch(t, static_cast<unsigned>(first));
        nodes[first] = search.nodes();
      });
      for (auto v : nodes) result.nodes += v;
      for (const auto& hit : hits) {
        if (hit) {
          result.lower = result.upper = t;
          result.example = mask_to_set(space, *hit);
          return result;
        }
      }
    }
  } catch (const BudgetAbort&) {
    return std::nullopt;
  }
  raise(Errc::BadRange, "exact search found no Furstenberg set up to the trivial size");
}

ExtremalResult bound_search(const FurstenbergInstance& inst, const Budget& budget, unsigned threads) {
  const BoundReport table = bound_table(inst);
  ExtremalResult result;
  result.lower = std::max(table.best_lower(), BigInt(inst.m()));
  result.upper = BigInt(inst.m()) * pow_int(inst.q(), inst.n() - inst.k());
  if (result.upper > budget.max_objects) return result;

  PointSet current = trivial_construction(inst);
  const BigInt check_cost = qbinomial(inst.n(), inst.k(), inst.q()) * pow_int(inst.q(), inst.n() - inst.k());
  BigInt spent = 0;
  const auto indices = current.indices();
  for (auto it = indices.rbegin(); it != indices.rend(); ++it) {
    spent += check_cost + current.size();
    if (spent > budget.max_objects || BigInt(current.size()) <= result.lower) break;
    std::vector<std::uint64_t> trial;
    trial.reserve(current.size() - 1);
    for (auto idx : current.indices()) {
      if (idx != *it) trial.push_back(idx);
    }
    PointSet candidate = PointSet::from_indices(current.space(), std::move(trial));
    if (is_furstenberg(candidate, inst.k(), inst.m(), budget, threads).ok) current = std::move(candidate);
    ++result.nodes;
  }
  result.upper = current.size();
  result.exact = result.upper == result.lower;
  result.example = std::move(current);
  return result;
}

}  // namespace

ExtremalResult search_extremal(const FurstenbergInstance& inst, const Budget& budget, unsigned threads) {
  if (pow_int(inst.q(), inst.n()) <= kExactLimit) {
    if (auto exact = exact_search(inst, budget, threads)) return *exact;
  }
  return bound_search(inst, budget, threads);
}

PointSet lift_construction(const FieldExtension& ext, const PointSet& big_set) {
  require(big_set.field() == ext.big(), Errc::IncompatibleFields, "point set does not live over the extension field");
  PointSet out(AffineSpace(ext.base(), big_set.dim() * ext.degree()));
  for (const auto& p : big_set.points()) out.insert(base_vector_iso(ext, p));
  return out;
}

Subspace lift_direction(const FieldExtension& ext, std::span<const FieldElement> d) {
  require(std::any_of(d.begin(), d.end(), [](FieldElement x) { return x != Field::zero(); }), Errc::ZeroDirection,
          "line direction must be nonzero");
  const Field& big = ext.big();
  std::vector<Point> vectors;
  for (std::uint32_t j = 0; j < ext.degree(); ++j) {
    std::vector<FieldElement> unit(ext.degree(), Field::zero());
    unit[j] = Field::one();
    const FieldElement lambda = ext.combine(unit);
    Point scaled(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) scaled[i] = big.mul(lambda, d[i]);
    vectors.push_back(base_vector_iso(ext, scaled));
  }
  return Subspace::span_of(ext.base(), d.size() * ext.degree(), vectors);
}

LiftedCoverage lifted_coverage(const FieldExtension& ext, std::size_t r, const PointSet& lifted, std::uint64_t m,
                               const Budget& budget) {
  require(lifted.field() == ext.base() && lifted.dim() == r * ext.degree(), Errc::DimensionMismatch,
          "lifted set must live in F_q^{rk}");
  const auto points = lifted.points();
  LiftedCoverage report;
  report.ok = true;
  SubspaceStream lines(ext.big(), r, 1, budget);
  while (auto line = lines.next()) {
    const Subspace dir = lift_direction(ext, line->basis().row(0));
    const std::uint64_t count = best_translate(ext.base(), dir, points).count;
    report.counts.push_back(count);
    if (count < m && report.ok) {
      report.ok = false;
      report.failing = dir;
    }
  }
  return report;
}

}  // namespace flab

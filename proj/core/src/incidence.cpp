#include "flab/incidence.hpp"

#include <algorithm>
#include <set>

#include "flab/error.hpp"
#include "flab/parallel.hpp"

namespace flab {

namespace {

std::uint64_t points_in(const Field& field, const Flat& flat, const std::vector<Point>& points) {
  std::uint64_t count = 0;
  for (const auto& p : points) count += flat_contains(field, flat, p) ? 1 : 0;
  return count;
}

std::vector<std::uint64_t> count_all(const Field& field, const std::vector<Flat>& flats,
                                     const std::vector<Point>& points, unsigned threads) {
  std::vector<std::uint64_t> counts(flats.size());
  parallel_for(flats.size(), threads, [&](std::size_t i) { counts[i] = points_in(field, flats[i], points); });
  return counts;
}

std::vector<Flat> all_flats(const Field& field, std::size_t n, std::size_t rank, const Budget& budget) {
  std::vector<Flat> flats;
  FlatStream stream(field, n, rank, budget);
  while (auto f = stream.next()) flats.push_back(std::move(*f));
  return flats;
}

Rational qpow(std::uint64_t q, std::int64_t e) { return pow_rat(Rational(BigInt(q)), e); }

}  // namespace

FlatFamily FlatFamily::of(AffineSpace space, std::vector<Flat> flats) {
  require(!flats.empty(), Errc::EmptyInput, "flat family needs at least one flat");
  FlatFamily family(std::move(space), flats.front().rank());
  for (auto& f : flats) family.insert(std::move(f));
  return family;
}

bool FlatFamily::insert(Flat flat) {
  require(flat.direction.ambient_dim() == space_.dim() && flat.shift.size() == space_.dim(),
          Errc::DimensionMismatch, "flat lives in a different ambient space");
  require(flat.rank() == rank_, Errc::DimensionMismatch,
          "flat of rank " + std::to_string(flat.rank()) + " in a family of rank " + std::to_string(rank_));
  Flat canonical = make_flat(space_.field(), std::move(flat.direction), flat.shift);
  const auto it = std::lower_bound(flats_.begin(), flats_.end(), canonical);
  if (it != flats_.end() && *it == canonical) return false;
  flats_.insert(it, std::move(canonical));
  return true;
}

BigInt count_incidences(const PointSet& s, const FlatFamily& l, unsigned threads) {
  require(s.space() == l.space(), Errc::DimensionMismatch, "point set and flats live in different spaces");
  BigInt total = 0;
  for (auto c : count_all(s.field(), l.flats(), s.points(), threads)) total += c;
  return total;
}

IncidenceReport haemers_check(const PointSet& s, const FlatFamily& l, unsigned threads) {
  const std::uint64_t q = s.field().order();
  const auto n = static_cast<std::int64_t>(s.dim());
  const auto k = static_cast<std::int64_t>(l.rank());
  IncidenceReport report;
  report.lemma = "haemers";
  report.incidences = count_incidences(s, l, threads);
  const BigInt product = BigInt(s.size()) * l.size();
  report.lhs = Rational(report.incidences);
  report.rhs = qpow(q, k - n) * Rational(product);
  const BigInt radicand = pow_int(q, k) * qbinomial(n - 1, k, q) * product;
  report.radicand = Rational(radicand);
  const Rational excess = report.lhs - report.rhs;
  report.ok = excess <= 0 || excess * excess <= report.radicand;
  return report;
}

IncidenceReport poor_flat_census(const PointSet& s, std::size_t l, const Rational& delta, const Budget& budget,
                                 unsigned threads) {
  require(!s.empty(), Errc::EmptyInput, "poor-flat census needs a nonempty point set");
  const std::size_t k = s.dim();
  require(l >= 1 && l + 1 <= k, Errc::BadRange,
          "flat rank l=" + std::to_string(l) + " must satisfy 1 <= l <= k-1 with k=" + std::to_string(k));
  require(delta > 0 && delta < 1, Errc::BadDelta, "delta=" + to_fraction_string(delta) + " must lie in (0, 1)");
  const std::uint64_t q = s.field().order();
  const auto shift = static_cast<std::int64_t>(l) - static_cast<std::int64_t>(k);
  const Rational mq = Rational(BigInt(s.size())) * qpow(q, shift);
  const Rational threshold = delta * mq + 1;

  const auto flats = all_flats(s.field(), k, l, budget);
  const auto counts = count_all(s.field(), flats, s.points(), threads);
  IncidenceReport report;
  report.lemma = "poor_flats";
  std::uint64_t poor = 0;
  for (std::size_t i = 0; i < flats.size(); ++i) {
    const bool is_poor = Rational(BigInt(counts[i])) < threshold;
    poor += is_poor ? 1 : 0;
    report.incidences += counts[i];
    report.census.push_back(FlatCount{flats[i], counts[i], is_poor});
  }
  report.lhs = Rational(BigInt(poor));
  report.rhs = qpow(q, -shift) * Rational(qbinomial(k, l, q)) / (1 + mq * (1 - delta) * (1 - delta));
  report.ok = report.lhs <= report.rhs;
  return report;
}

IncidenceReport contained_subflats(const FlatFamily& family, std::size_t l, const Budget& budget, unsigned threads) {
  const Field& field = family.space().field();
  const std::size_t n = family.space().dim();
  const std::size_t k = family.rank();
  const std::uint64_t q = field.order();
  require(l >= 1 && l < k && k < n, Errc::BadRange,
          "need 1 <= l < k < n, got l=" + std::to_string(l) + ", k=" + std::to_string(k));

  std::set<Subspace> directions;
  for (const auto& f : family.flats()) {
    require(directions.insert(f.direction).second, Errc::NotADirectionFamily, "two flats share a direction");
  }
  require(BigInt(directions.size()) == qbinomial(n, k, q), Errc::NotADirectionFamily,
          "family covers " + std::to_string(directions.size()) + " of the " + qbinomial(n, k, q).str() +
              " rank-k directions");
  budget.check(BigInt(family.size()) * qbinomial(k, l, q) * pow_int(q, k), "subflat candidates");

  const auto& flats = family.flats();
  std::vector<std::vector<Flat>> inside(flats.size());
  parallel_for(flats.size(), threads, [&](std::size_t i) {
    const PointSet pts = flat_points(family.space(), flats[i], budget);
    for (const auto& sub : subspaces_within(field, flats[i].direction, l, budget)) {
      std::set<Flat> seen;
      for (const auto& p : pts.points()) seen.insert(make_flat(field, sub, p));
      inside[i].insert(inside[i].end(), seen.begin(), seen.end());
    }
  });
  std::set<Flat> distinct;
  for (auto& v : inside) distinct.insert(std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));

  IncidenceReport report;
  report.lemma = "contained_subflats";
  const FurstenbergInstance reduced(field, n - l, k - l, pow_int(q, k - l).convert_to<std::uint64_t>());
  if (pow_int(q, n - l) <= 16) {
    const ExtremalResult r = search_extremal(reduced, budget, threads);
    report.k_factor = r.lower;
    report.k_factor_exact = r.exact;
  } else {
    report.k_factor = bound_table(reduced).best_lower();
  }
  report.incidences = distinct.size();
  report.lhs = Rational(BigInt(distinct.size()));
  report.rhs = Rational(report.k_factor * qbinomial(n, l, q));
  report.ok = report.lhs >= report.rhs;
  return report;
}

IncidenceReport kakeya_becks_census(const PointSet& s, std::size_t k, std::uint64_t m, const Rational& delta,
                                    const Budget& budget, unsigned threads) {
  require(delta < 1, Errc::BadDelta, "delta=" + to_fraction_string(delta) + " must be below 1");
  require(is_furstenberg(s, k, m, budget, threads).ok, Errc::NotFurstenberg,
          "point set is not a (" + std::to_string(k) + "," + std::to_string(m) + ")-Furstenberg set");
  const std::uint64_t q = s.field().order();
  const std::size_t n = s.dim();
  const Rational threshold = delta * Rational(BigInt(m), BigInt(q)) + 1;

  const auto flats = all_flats(s.field(), n, k - 1, budget);
  const auto counts = count_all(s.field(), flats, s.points(), threads);
  IncidenceReport report;
  report.lemma = "rich_flats";
  std::uint64_t rich = 0;
  for (std::size_t i = 0; i < flats.size(); ++i) {
    const bool is_rich = Rational(BigInt(counts[i])) >= threshold;
    rich += is_rich ? 1 : 0;
    report.incidences += counts[i];
    report.census.push_back(FlatCount{flats[i], counts[i], is_rich});
  }
  report.hypothesis_met = Rational(BigInt(m)) * (1 - delta) * (1 - delta) >= Rational(pow_int(2, n + 3 - k) * q);
  report.lhs = Rational(BigInt(rich));
  report.rhs = Rational(pow_int(q, n - k + 1) * qbinomial(n, k - 1, q), pow_int(2, n + 2 - k));
  report.ok = report.lhs > report.rhs;
  return report;
}

BoundValue heavy_flats_lower_bound(const Rational& delta, const Rational& gamma, std::size_t l, std::size_t n,
                                   std::uint64_t q) {
  require(delta > 0 && delta <= 1, Errc::BadRange, "delta=" + to_fraction_string(delta) + " must lie in (0, 1]");
  require(gamma > 0, Errc::BadRange, "gamma must be positive");
  const Rational kappa = gamma * qpow(q, static_cast<std::int64_t>(l));
  const Rational qn = qpow(q, static_cast<std::int64_t>(n));
  // sqrt(delta (1-delta)/kappa) q^n = sqrt(delta (1-delta) q^{2n}/kappa)
  return BoundValue{delta * kappa / (kappa + 1) * qn, 1, delta * (1 - delta) / kappa * qn * qn};
}

BoundValue heavy_flats_for_furstenberg(std::uint64_t q, std::size_t n, std::size_t k, std::uint64_t m) {
  const auto nn = static_cast<std::int64_t>(n);
  const auto kk = static_cast<std::int64_t>(k);
  return heavy_flats_lower_bound(Rational(BigInt(m)) * qpow(q, -kk), qpow(q, kk - nn), k, n, q);
}

}  // namespace flab

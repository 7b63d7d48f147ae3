#include <functional>
#include <sstream>

#include "flab/error.hpp"
#include "flab/formats.hpp"
#include "flab_cli.hpp"

namespace flab::cli {

namespace {

bool field_axioms() {
  for (std::uint32_t q : {4u, 8u, 9u}) {
    const Field f = Field::of_order(q);
    for (std::uint32_t a = 0; a < q; ++a) {
      for (std::uint32_t b = 0; b < q; ++b) {
        const FieldElement x = f.element(a);
        const FieldElement y = f.element(b);
        if (f.add(x, y) != f.add(y, x) || f.mul(x, y) != f.mul(y, x)) return false;
        if (b != 0 && f.mul(f.div(x, y), y) != x) return false;
        for (std::uint32_t c = 0; c < q; ++c) {
          const FieldElement z = f.element(c);
          if (f.mul(x, f.add(y, z)) != f.add(f.mul(x, y), f.mul(x, z))) return false;
        }
      }
    }
  }
  return true;
}

bool subspace_counts() {
  for (std::uint32_t q : {2u, 3u}) {
    for (std::size_t n = 1; n <= 4; ++n) {
      for (std::size_t k = 0; k <= n; ++k) {
        if (BigInt(enumerate_subspaces(Field::of_order(q), n, k).size()) != qbinomial(n, k, q)) return false;
      }
    }
  }
  return true;
}

bool small_extremal_values() {
  const Field f2 = Field::of_order(2);
  const auto k2211 = search_extremal(FurstenbergInstance(f2, 2, 1, 1));
  const auto k2212 = search_extremal(FurstenbergInstance(f2, 2, 1, 2));
  return k2211.exact && k2211.lower == 1 && k2212.exact && k2212.lower == 3;
}

bool bound_rows() {
  const BoundReport r = bound_table(FurstenbergInstance(Field::of_order(5), 4, 2, 25));
  return r.rows.front().rhs.value == Rational(625, 16);
}

bool entropic_bound_small() {
  const AffineSpace space(Field::of_order(2), 2);
  for (std::uint64_t mask = 1; mask < 16; ++mask) {
    std::vector<std::uint64_t> idx;
    for (std::uint64_t i = 0; i < 4; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    const auto dist = RationalDistribution::uniform(PointSet::from_indices(space, idx));
    if (!check_entropic_bound(dist, 1).ok) return false;
  }
  return true;
}

bool haemers_small() {
  const AffineSpace space(Field::of_order(2), 2);
  const FlatFamily lines = FlatFamily::of(space, enumerate_flats(space.field(), 2, 1));
  for (std::uint64_t mask = 0; mask < 16; ++mask) {
    std::vector<std::uint64_t> idx;
    for (std::uint64_t i = 0; i < 4; ++i) {
      if (mask & (1u << i)) idx.push_back(i);
    }
    if (!haemers_check(PointSet::from_indices(space, idx), lines).ok) return false;
  }
  return true;
}

bool constant_round_trip() {
  for (std::size_t n = 2; n <= 4; ++n) {
    for (std::size_t k = 1; k < n; ++k) {
      const LogConstant d{2, Rational(static_cast<long long>(k))};
      if (!(ab_constants(ConstantTransform::BtoA, d, n, k) == LogConstant{2, Rational(static_cast<long long>(n))})) {
        return false;
      }
      const LogConstant c{3, Rational(1, 2)};
      if (!(ab_constants(ConstantTransform::BtoA, ab_constants(ConstantTransform::AtoB, c, n, k), n, k) == c)) {
        return false;
      }
    }
  }
  return true;
}

bool multiplicity_basics() {
  const Field f = Field::of_order(3);
  const Polynomial x = Polynomial::variable(f, 2, 0);
  const Polynomial y = Polynomial::variable(f, 2, 1);
  const Point origin{Field::zero(), Field::zero()};
  return multiplicity(x * x * y, origin) == Multiplicity(3) && multiplicity(x + y, origin) == Multiplicity(1) &&
         multiplicity(Polynomial(f, 2), origin).is_infinite();
}

bool lifted_lines() {
  const FieldExtension ext(Field::of_order(2), Field::of_order(4));
  SubspaceStream lines(ext.big(), 2, 1);
  while (auto line = lines.next()) {
    if (lift_direction(ext, line->basis().row(0)).rank() != 2) return false;
  }
  return true;
}

bool format_round_trip() {
  const Field f = Field::of_order(9);
  PointSet s{AffineSpace(f, 2)};
  s.insert(Point{f.element(1), f.element(7)});
  s.insert(Point{f.element(5), f.element(0)});
  std::stringstream io;
  write_point_set(io, s);
  return read_point_set(io) == s;
}

}  // namespace

std::vector<SelftestCase> run_selftest() {
  const std::vector<std::pair<std::string, std::function<bool()>>> checks{
      {"field_axioms", field_axioms},
      {"subspace_counts", subspace_counts},
      {"small_extremal_values", small_extremal_values},
      {"bound_rows", bound_rows},
      {"entropic_bound_small", entropic_bound_small},
      {"haemers_small", haemers_small},
      {"constant_round_trip", constant_round_trip},
      {"multiplicity_basics", multiplicity_basics},
      {"lifted_lines", lifted_lines},
      {"format_round_trip", format_round_trip},
  };
  std::vector<SelftestCase> out;
  for (const auto& [name, fn] : checks) {
    bool ok = false;
    try {
      ok = fn();
    } catch (const std::exception&) {
      ok = false;
    }
    out.push_back({name, ok});
  }
  return out;
}

}  // namespace flab::cli

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "flab/entropy.hpp"
#include "flab/error.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace flab;
using testing_util::code_of;
using testing_util::pt;

namespace {

RationalDistribution kakeya_f2() {
  const AffineSpace space(Field::of_order(2), 2);
  return RationalDistribution::uniform(testing_util::subset(space, 0b0111));  // (0,0), (0,1), (1,0)
}

bool same_entropy(const EntropyValue& a, const EntropyValue& b) { return compare_entropy(a, b) == 0; }

EntropyValue ev(std::int64_t max_weight, std::int64_t total) { return EntropyValue{max_weight, total}; }

std::vector<std::uint64_t> sorted_weights(const RationalDistribution& d) {
  std::vector<std::uint64_t> w;
  for (const auto& [idx, x] : d.weights()) w.push_back(x);
  std::sort(w.begin(), w.end());
  return w;
}

RationalDistribution random_distribution(std::mt19937_64& rng, const AffineSpace& space, std::uint64_t max_weight) {
  RationalDistribution d(space);
  for (std::uint64_t i = 0; i < space.size(); ++i) d.add_index(i, rng() % (max_weight + 1));
  if (d.empty()) d.add_index(rng() % space.size(), 1);
  return d;
}

}  // namespace

TEST(MinEntropy, UniformOnSubspaceIsItsRank) {
  const Field f = Field::of_order(3);
  const AffineSpace space(f, 3);
  for (std::size_t k = 0; k <= 3; ++k) {
    const Subspace w = enumerate_subspaces(f, 3, k).back();
    const auto dist = RationalDistribution::uniform(flat_points(space, make_flat(f, w, space.origin())));
    EXPECT_TRUE(same_entropy(min_entropy(dist), ev(1, oracle::ipow(3, static_cast<int>(k)))));
  }
}

TEST(MinEntropy, PointMassIsZero) {
  const AffineSpace space(Field::of_order(5), 2);
  RationalDistribution d(space);
  d.add(pt(space.field(), {2, 3}), 7);
  EXPECT_TRUE(same_entropy(min_entropy(d), ev(1, 1)));
  EXPECT_EQ(code_of([&] { min_entropy(RationalDistribution(space)); }), Errc::EmptyInput);
}

TEST(MinEntropy, CompareIsByValue) {
  EXPECT_TRUE(same_entropy(ev(2, 6), ev(1, 3)));
  EXPECT_EQ(compare_entropy(ev(2, 3), ev(1, 3)), std::strong_ordering::less);
  EXPECT_NEAR(ev(2, 3).approx(2), std::log2(1.5), 1e-12);
}

TEST(Pushforward, UniformPlaneToLine) {
  const Field f = Field::of_order(3);
  const AffineSpace space(f, 2);
  const auto dist = RationalDistribution::uniform(PointSet::whole(space));
  for (const Subspace& kernel : enumerate_subspaces(f, 2, 1)) {
    const auto image = pushforward(dist, OntoLinearMap::from_kernel(f, kernel));
    EXPECT_EQ(sorted_weights(image), (std::vector<std::uint64_t>{3, 3, 3}));
    EXPECT_EQ(image.total(), dist.total());
  }
}

TEST(Pushforward, LineAlongKernelCollapses) {
  const Field f = Field::of_order(5);
  const AffineSpace space(f, 2);
  const std::vector<Point> dir{pt(f, {1, 2})};
  const Subspace kernel = Subspace::span_of(f, 2, dir);
  const auto line = RationalDistribution::uniform(flat_points(space, make_flat(f, kernel, pt(f, {3, 0}))));
  const auto image = pushforward(line, OntoLinearMap::from_kernel(f, kernel));
  EXPECT_EQ(image.weights().size(), 1u);
  EXPECT_TRUE(same_entropy(min_entropy(image), ev(1, 1)));
}

TEST(Pushforward, FiberSums) {
  const Field f = Field::of_order(2);
  const std::vector<Point> dir{pt(f, {1, 1})};
  const auto image = pushforward(kakeya_f2(), OntoLinearMap::from_kernel(f, Subspace::span_of(f, 2, dir)));
  EXPECT_EQ(sorted_weights(image), (std::vector<std::uint64_t>{1, 2}));
}

TEST(Pushforward, RejectsWrongDomain) {
  const Field f = Field::of_order(2);
  const auto map = OntoLinearMap::from_kernel(f, enumerate_subspaces(f, 3, 1).front());
  EXPECT_EQ(code_of([&] { pushforward(kakeya_f2(), map); }), Errc::DimensionMismatch);
}

TEST(Pushforward, KernelInvariance) {
  // Every onto map F_2^3 -> F_2^2 with a given kernel is A * M for A in GL_2(F_2).
  const Field f = Field::of_order(2);
  const AffineSpace space(f, 3);
  std::vector<Matrix> gl2;
  for (std::uint32_t bits = 0; bits < 16; ++bits) {
    const std::vector<Point> rows{pt(f, {bits & 1U, bits >> 1 & 1U}), pt(f, {bits >> 2 & 1U, bits >> 3 & 1U})};
    const Matrix a = Matrix::from_rows(rows, 2);
    if (rref(f, a).rank == 2) gl2.push_back(a);
  }
  ASSERT_EQ(gl2.size(), 6u);
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const auto dist = random_distribution(rng, space, 8);
    for (const Subspace& kernel : enumerate_subspaces(f, 3, 1)) {
      const auto base = OntoLinearMap::from_kernel(f, kernel);
      const auto expected = sorted_weights(pushforward(dist, base));
      for (const Matrix& a : gl2) {
        const auto other = OntoLinearMap::from_matrix(f, mat_mul(f, a, base.matrix()));
        EXPECT_EQ(other.kernel(), kernel);
        EXPECT_EQ(sorted_weights(pushforward(dist, other)), expected);
      }
    }
  }
}

TEST(Pushforward, EntropyNeverIncreases) {
  const Field f = Field::of_order(3);
  const AffineSpace space(f, 2);
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 50; ++trial) {
    const auto dist = random_distribution(rng, space, 5);
    for (const Subspace& kernel : enumerate_subspaces(f, 2, 1)) {
      const auto image = pushforward(dist, OntoLinearMap::from_kernel(f, kernel));
      EXPECT_EQ(image.total(), dist.total());
      EXPECT_NE(compare_entropy(min_entropy(image), min_entropy(dist)), std::strong_ordering::greater);
      EXPECT_NE(compare_entropy(min_entropy(image), ev(1, 3)), std::strong_ordering::greater);
    }
  }
}

TEST(OntoMap, RequiresFullRowRank) {
  const Field f = Field::of_order(2);
  const std::vector<Point> rows{pt(f, {1, 1}), pt(f, {1, 1})};
  EXPECT_EQ(code_of([&] { OntoLinearMap::from_matrix(f, Matrix::from_rows(rows, 2)); }), Errc::BadRange);
}

TEST(BestProjection, UniformAttainsCodimension) {
  for (std::uint32_t q : {2u, 3u}) {
    const Field f = Field::of_order(q);
    const AffineSpace space(f, 3);
    const auto dist = RationalDistribution::uniform(PointSet::whole(space));
    for (std::size_t k = 1; k < 3; ++k) {
      const auto r = best_projection(dist, k);
      EXPECT_TRUE(same_entropy(r.entropy, ev(1, oracle::ipow(q, static_cast<int>(3 - k)))));
      EXPECT_EQ(BigInt(r.kernels_examined), qbinomial(3, static_cast<std::int64_t>(k), q));
    }
  }
}

TEST(BestProjection, KakeyaSetOfF2) {
  const auto r = best_projection(kakeya_f2(), 1);
  EXPECT_TRUE(same_entropy(r.entropy, ev(2, 3)));
  EXPECT_TRUE(same_entropy(r.witness.attained, r.entropy));
}

TEST(BestProjection, ProductWithPointMass) {
  const Field f = Field::of_order(3);
  const AffineSpace space(f, 2);
  RationalDistribution d(space);
  for (std::uint32_t t = 0; t < 3; ++t) d.add(pt(f, {0, t}), 1);
  const auto r = best_projection(d, 1);
  EXPECT_TRUE(same_entropy(r.entropy, ev(1, 3)));
  const std::vector<Point> axis{pt(f, {1, 0})};
  EXPECT_EQ(r.witness.map.kernel(), Subspace::span_of(f, 2, axis));
}

TEST(BestProjection, MatchesOracleAndThreadCount) {
  const Field f = Field::of_order(2);
  const AffineSpace space(f, 3);
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const auto dist = random_distribution(rng, space, 8);
    std::map<long, std::uint64_t> w(dist.weights().begin(), dist.weights().end());
    for (std::size_t k = 1; k <= 2; ++k) {
      const auto one = best_projection(dist, k, {}, 1);
      const auto many = best_projection(dist, k, {}, 4);
      EXPECT_EQ(one.witness.map.kernel(), many.witness.map.kernel());
      EXPECT_EQ(one.entropy.max_weight, BigInt(oracle::best_projection_weight(2, 3, static_cast<int>(k), w)));
    }
  }
}

TEST(EntropicBound, PointMass) {
  const AffineSpace space(Field::of_order(3), 3);
  RationalDistribution d(space);
  d.add_index(5, 4);
  for (std::size_t k = 1; k < 3; ++k) EXPECT_TRUE(check_entropic_bound(d, k).ok);
}

TEST(EntropicBound, UniformHasPositiveMargin) {
  const AffineSpace space(Field::of_order(3), 3);
  const auto d = RationalDistribution::uniform(PointSet::whole(space));
  for (std::size_t k = 1; k < 3; ++k) {
    const auto r = check_entropic_bound(d, k);
    EXPECT_TRUE(r.ok);
    EXPECT_GT(r.margin, 0);
  }
}

TEST(EntropicBound, KakeyaSetIntegerForm) {
  const auto r = check_entropic_bound(kakeya_f2(), 1);
  EXPECT_TRUE(r.ok);
  EXPECT_EQ(r.lhs, 16);
  EXPECT_EQ(r.rhs, 27);
  EXPECT_EQ(r.margin, 11);
}

TEST(Recursion, RankOneMatchesDirect) {
  const auto r = check_recursion(kakeya_f2(), 1);
  EXPECT_EQ(r.stages.size(), 1u);
  EXPECT_TRUE(same_entropy(r.composed, r.direct));
  EXPECT_TRUE(same_entropy(r.direct, best_projection(kakeya_f2(), 1).entropy));
}

TEST(Recursion, UniformBothAttainCodimension) {
  const AffineSpace space(Field::of_order(2), 4);
  const auto d = RationalDistribution::uniform(PointSet::whole(space));
  const auto r = check_recursion(d, 2);
  EXPECT_TRUE(same_entropy(r.composed, ev(1, 4)));
  EXPECT_TRUE(same_entropy(r.direct, ev(1, 4)));
}

TEST(Recursion, RandomWeightsOnF2Cubed) {
  const AffineSpace space(Field::of_order(2), 3);
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 100; ++trial) {
    const auto r = check_recursion(random_distribution(rng, space, 8), 2);
    EXPECT_TRUE(r.composed_not_above_direct);
    EXPECT_NE(compare_entropy(r.composed, r.direct), std::strong_ordering::greater);
    EXPECT_TRUE(r.composed_ok);
    EXPECT_TRUE(r.direct_ok);
    EXPECT_EQ(r.composed_map.kernel().rank(), 2u);
  }
}

TEST(NormBound, ConstantOne) {
  for (std::uint32_t q : {2u, 3u}) {
    const AffineSpace space(Field::of_order(q), 2);
    IntegerFunction f(space);
    for (std::uint64_t i = 0; i < space.size(); ++i) f.set_index(i, 1);
    EXPECT_EQ(heavy_line_level(f), q);
    const auto r = norm_bound_check(f, q);
    EXPECT_TRUE(r.hypothesis_ok);
    EXPECT_EQ(r.sum, q * q);
    EXPECT_EQ(r.bound_num, q * q * q * q);
    EXPECT_EQ(r.bound_den, (2 * q - 1) * (2 * q - 1));
    EXPECT_TRUE(r.ok);
  }
}

TEST(NormBound, KakeyaIndicator) {
  const auto f = IntegerFunction::from_distribution(kakeya_f2());
  const auto r = norm_bound_check(f, 2);
  EXPECT_TRUE(r.hypothesis_ok);
  EXPECT_EQ(r.sum * r.bound_den, 27);
  EXPECT_EQ(r.bound_num, 16);
  EXPECT_TRUE(r.ok);
}

TEST(NormBound, HypothesisViolation) {
  const auto f = IntegerFunction::from_distribution(kakeya_f2());
  EXPECT_EQ(heavy_line_level(f), 2);
  EXPECT_FALSE(norm_bound_check(f, 3).hypothesis_ok);
}

TEST(NormBound, NegativeValuesUseAbsoluteValue) {
  const AffineSpace space(Field::of_order(2), 2);
  IntegerFunction f(space);
  f.set_index(0, -2);
  f.set_index(3, 1);
  EXPECT_EQ(heavy_line_level(f), 2);
  const auto r = norm_bound_check(f, 2);
  EXPECT_EQ(r.sum, 5);
  EXPECT_TRUE(r.ok);
}

TEST(KeyBound, RequiresMultipleOfR) {
  const auto f = IntegerFunction::from_distribution(kakeya_f2());
  EXPECT_EQ(code_of([&] { key_bound_check(f, 2, 3); }), Errc::BadRange);
  const auto r = key_bound_check(f, 2, 4);
  EXPECT_EQ(r.multiplicity_scale, 6);
  EXPECT_EQ(r.degree, 6);
}

TEST(AbConstants, Examples) {
  for (std::size_t n = 2; n <= 5; ++n) {
    for (std::size_t k = 1; k < n; ++k) {
      const LogConstant one{2, 0};
      EXPECT_EQ(ab_constants(ConstantTransform::AtoB, one, n, k).exponent, 0);
      const LogConstant c{2, Rational(static_cast<long long>(n))};
      const LogConstant d = ab_constants(ConstantTransform::AtoB, c, n, k);
      EXPECT_EQ(d, (LogConstant{2, Rational(static_cast<long long>(k))}));
      EXPECT_EQ(ab_constants(ConstantTransform::BtoA, d, n, k), c);
    }
  }
}

TEST(AbConstants, NormalizesBase) {
  EXPECT_EQ((LogConstant{4, Rational(1, 2)}), (LogConstant{2, 1}));
  EXPECT_EQ((LogConstant{9, 1}).normalized().base, 3);
  EXPECT_NEAR((LogConstant{2, 3}).as_constant(), 0.125, 1e-15);
  EXPECT_NEAR((LogConstant{2, 1}).as_loss(4), 0.5, 1e-15);
}

TEST(AbConstants, RejectsOutOfRange) {
  EXPECT_EQ(code_of([] { ab_constants(ConstantTransform::AtoB, LogConstant{2, -1}, 3, 1); }), Errc::BadRange);
  EXPECT_EQ(code_of([] { ab_constants(ConstantTransform::BtoA, LogConstant{2, 1}, 3, 3); }), Errc::BadRange);
  EXPECT_EQ(code_of([] { ab_constants(ConstantTransform::BtoA, LogConstant{2, 1}, 3, 0); }), Errc::BadRange);
}

TEST(LinearMapStatement, KakeyaSetWithLogTwoLoss) {
  const AffineSpace space(Field::of_order(2), 2);
  const auto r = check_linear_map_statement(testing_util::subset(space, 0b0111), 1, LogConstant{2, 1});
  EXPECT_TRUE(r.ok);
  EXPECT_TRUE(same_entropy(r.projection.entropy, ev(2, 3)));
}

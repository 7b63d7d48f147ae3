#include <gtest/gtest.h>

#include <random>

#include "flab/error.hpp"
#include "flab/polymethod.hpp"
#include "helpers.hpp"
#include "oracle.hpp"

using namespace flab;
using testing_util::code_of;
using testing_util::pt;

namespace {

Polynomial var(const Field& f, std::size_t n, std::size_t i) { return Polynomial::variable(f, n, i); }

Polynomial cst(const Field& f, std::size_t n, std::int64_t c) { return Polynomial::constant(f, n, f.from_integer(c)); }

std::vector<Point> all_points(const Field& f, std::size_t n) {
  const AffineSpace space(f, n);
  std::vector<Point> out;
  for (std::uint64_t i = 0; i < space.size(); ++i) out.push_back(space.point(i));
  return out;
}

std::vector<FieldElement> all_elements(const Field& f) {
  std::vector<FieldElement> out;
  for (std::uint32_t c = 0; c < f.order(); ++c) out.push_back(f.element(c));
  return out;
}

}  // namespace

TEST(Polynomial, DegreeAndZeroTerms) {
  const Field f = Field::of_order(3);
  const Polynomial x = var(f, 2, 0);
  EXPECT_EQ(Polynomial(f, 2).degree(), -1);
  EXPECT_EQ((x * x * var(f, 2, 1)).degree(), 3);
  const Polynomial cancel = x + x + x;  // 3x = 0 over F_3
  EXPECT_TRUE(cancel.is_zero());
  EXPECT_TRUE(cancel.terms().empty());
}

TEST(Hasse, ZeroOrderIsIdentity) {
  const Field f = Field::of_order(5);
  const Polynomial p = var(f, 2, 0) * var(f, 2, 0) * var(f, 2, 1) + cst(f, 2, 3);
  EXPECT_EQ(hasse_derivative(p, {0, 0}), p);
}

TEST(Hasse, SquareInCharacteristicTwo) {
  const Field f = Field::of_order(2);
  const Polynomial x2 = var(f, 1, 0) * var(f, 1, 0);
  EXPECT_TRUE(hasse_derivative(x2, {1}).is_zero());
  EXPECT_EQ(hasse_derivative(x2, {2}), cst(f, 1, 1));
}

TEST(Hasse, ChainRuleCubeOverF5) {
  const Field f = Field::of_order(5);
  const Polynomial x3 = var(f, 1, 0) * var(f, 1, 0) * var(f, 1, 0);
  const Polynomial twice = hasse_derivative(hasse_derivative(x3, {1}), {1});
  EXPECT_EQ(twice, hasse_derivative(x3, {2}).scaled(f.element(2)));
  EXPECT_EQ(twice, var(f, 1, 0).scaled(f.element(1)));  // 6x = x over F_5
}

TEST(Hasse, PointwiseMatchesMaterialized) {
  const Field f = Field::of_order(4);
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Polynomial p(f, 2);
    for (int t = 0; t < 5; ++t) {
      p.add_term({static_cast<std::uint32_t>(rng() % 4), static_cast<std::uint32_t>(rng() % 4)},
                 f.element(static_cast<std::uint32_t>(rng() % 4)));
    }
    for (const Multidegree& i : multidegrees_of_weight(2, 2)) {
      const Polynomial d = hasse_derivative(p, i);
      for (const Point& a : all_points(f, 2)) EXPECT_EQ(d.evaluate(a), hasse_derivative_at(p, i, a));
    }
  }
}

TEST(Hasse, ExpansionIdentity) {
  // P(x + z) = sum_i P^{(i)}(x) z^i as polynomials in 2n variables.
  std::mt19937_64 rng(11);
  for (int p : {2, 3, 5}) {
    const Field f = Field::of_order(p);
    for (std::size_t n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 20; ++trial) {
        const Polynomial poly =
            testing_util::from_oracle(f, n, testing_util::random_poly(rng, p, static_cast<int>(n), 4, 5));
        const std::size_t vars = 2 * n;
        Polynomial lhs(f, vars);
        for (const auto& [e, c] : poly.terms()) {
          Polynomial term = Polynomial::constant(f, vars, c);
          for (std::size_t j = 0; j < n; ++j) {
            const Polynomial shifted = var(f, vars, j) + var(f, vars, n + j);
            for (std::uint32_t t = 0; t < e[j]; ++t) term = term * shifted;
          }
          lhs = lhs + term;
        }
        Polynomial rhs(f, vars);
        for (std::uint32_t w = 0; w <= 4; ++w) {
          for (const Multidegree& i : multidegrees_of_weight(n, w)) {
            Multidegree zi(vars, 0);
            for (std::size_t j = 0; j < n; ++j) zi[n + j] = i[j];
            const Polynomial d = hasse_derivative(poly, i);
            for (const auto& [e, c] : d.terms()) {
              Multidegree full = zi;
              for (std::size_t j = 0; j < n; ++j) full[j] = e[j];
              rhs.add_term(full, c);
            }
          }
        }
        EXPECT_EQ(lhs, rhs);
      }
    }
  }
}

TEST(Hasse, ChainRuleTermExact) {
  std::mt19937_64 rng(13);
  for (int p : {2, 3, 5}) {
    const Field f = Field::of_order(p);
    const std::size_t n = 2;
    for (int trial = 0; trial < 10; ++trial) {
      const Polynomial poly = testing_util::from_oracle(f, n, testing_util::random_poly(rng, p, 2, 6, 6));
      for (std::uint32_t wi = 0; wi <= 4; ++wi) {
        for (std::uint32_t wj = 0; wi + wj <= 4; ++wj) {
          for (const Multidegree& i : multidegrees_of_weight(n, wi)) {
            for (const Multidegree& j : multidegrees_of_weight(n, wj)) {
              Multidegree sum(n);
              std::int64_t factor = 1;
              for (std::size_t t = 0; t < n; ++t) {
                sum[t] = i[t] + j[t];
                factor *= oracle::binom(sum[t], i[t]);
              }
              EXPECT_EQ(hasse_derivative(hasse_derivative(poly, i), j),
                        hasse_derivative(poly, sum).scaled(f.from_integer(factor)));
            }
          }
        }
      }
    }
  }
}

TEST(Multiplicity, Examples) {
  const Field f3 = Field::of_order(3);
  const Polynomial x = var(f3, 2, 0);
  const Polynomial y = var(f3, 2, 1);
  EXPECT_EQ(multiplicity(x * x * y, pt(f3, {0, 0})), Multiplicity(3));
  EXPECT_EQ(multiplicity(x * x * y + cst(f3, 2, 1), pt(f3, {0, 0})), Multiplicity(0));
  const Field f5 = Field::of_order(5);
  const Polynomial t = var(f5, 1, 0) - cst(f5, 1, 1);
  EXPECT_EQ(multiplicity(t * t, pt(f5, {1})), Multiplicity(2));
  EXPECT_TRUE(multiplicity(Polynomial(f5, 1), pt(f5, {3})).is_infinite());
}

TEST(Multiplicity, MatchesOracle) {
  std::mt19937_64 rng(17);
  for (int p : {2, 3, 5}) {
    const Field f = Field::of_order(p);
    for (int n = 1; n <= 3; ++n) {
      for (int trial = 0; trial < 30; ++trial) {
        const auto op = testing_util::random_poly(rng, p, n, 4, 4);
        const Polynomial poly = testing_util::from_oracle(f, n, op);
        for (const Point& a : all_points(f, n)) {
          oracle::Vec av;
          for (auto c : a) av.push_back(static_cast<int>(c.code));
          const int expected = oracle::multiplicity(p, op, av);
          const Multiplicity got = multiplicity(poly, a);
          if (expected < 0) {
            EXPECT_TRUE(got.is_infinite());
          } else {
            EXPECT_EQ(got, Multiplicity(static_cast<std::uint32_t>(expected)));
          }
        }
      }
    }
  }
}

TEST(RestrictToLine, LinearStaysLinear) {
  const Field f = Field::of_order(5);
  const Polynomial p = var(f, 2, 0).scaled(f.element(3)) + var(f, 2, 1) + cst(f, 2, 2);
  for (const Point& a : all_points(f, 2)) {
    EXPECT_LE(restrict_to_line(p, a, pt(f, {1, 4})).degree(), 1);
  }
}

TEST(RestrictToLine, ProductOnDiagonal) {
  const Field f = Field::of_order(3);
  const Polynomial p = var(f, 2, 0) * var(f, 2, 1);
  EXPECT_EQ(restrict_to_line(p, pt(f, {0, 0}), pt(f, {1, 1})), Polynomial::monomial(f, {2}, Field::one()));
  const Polynomial axis = restrict_to_line(p, pt(f, {0, 0}), pt(f, {1, 0}));
  EXPECT_TRUE(axis.is_zero());
  EXPECT_TRUE(multiplicity(axis, pt(f, {0})).is_infinite());
  EXPECT_EQ(code_of([&] { restrict_to_line(p, pt(f, {0, 0}), pt(f, {0, 0})); }), Errc::ZeroDirection);
}

TEST(RestrictToLine, MultiplicityDoesNotDrop) {
  std::mt19937_64 rng(19);
  for (int p : {2, 3}) {
    const Field f = Field::of_order(p);
    const auto points = all_points(f, 2);
    for (int trial = 0; trial < 20; ++trial) {
      const Polynomial poly = testing_util::from_oracle(f, 2, testing_util::random_poly(rng, p, 2, 4, 4));
      for (const Point& a : points) {
        for (const Point& b : points) {
          if (b == points.front()) continue;
          const Polynomial line = restrict_to_line(poly, a, b);
          for (const FieldElement t : all_elements(f)) {
            Point on(2);
            for (std::size_t j = 0; j < 2; ++j) on[j] = f.add(a[j], f.mul(b[j], t));
            EXPECT_GE(multiplicity(line, Point{t}), multiplicity(poly, on));
          }
        }
      }
    }
  }
}

TEST(HomogeneousPart, Examples) {
  const Field f = Field::of_order(3);
  const Polynomial x = var(f, 2, 0);
  const Polynomial y = var(f, 2, 1);
  EXPECT_EQ(homogeneous_part(x * y + y * y), x * y + y * y);
  const Polynomial x1 = var(f, 1, 0);
  EXPECT_EQ(homogeneous_part(x1 * x1 + x1 + cst(f, 1, 1)), x1 * x1);
  EXPECT_EQ(homogeneous_part(x * x * y + x * y + y), x * x * y);
  EXPECT_EQ(code_of([&] { homogeneous_part(Polynomial(f, 2)); }), Errc::ZeroPolynomial);
}

TEST(SchwartzZippel, Examples) {
  const Field f = Field::of_order(3);
  const auto u = all_elements(f);
  const SzAudit constant = sz_mult_audit(cst(f, 2, 2), u);
  EXPECT_EQ(constant.sum, 0);
  EXPECT_EQ(constant.bound, 0);
  EXPECT_TRUE(constant.ok);
  const SzAudit product = sz_mult_audit(var(f, 2, 0) * var(f, 2, 1), u);
  EXPECT_EQ(product.sum, 6);
  EXPECT_EQ(product.bound, 6);
  EXPECT_TRUE(product.ok);
  for (std::uint32_t q : {2u, 3u, 4u, 5u}) {
    const Field g = Field::of_order(q);
    Polynomial frob = Polynomial::monomial(g, {q}, Field::one()) - var(g, 1, 0);
    const SzAudit a = sz_mult_audit(frob, all_elements(g));
    EXPECT_EQ(a.sum, q);
    EXPECT_EQ(a.bound, q);
    EXPECT_TRUE(a.ok);
  }
}

TEST(SchwartzZippel, RandomPolynomials) {
  std::mt19937_64 rng(23);
  for (int p : {2, 3, 5}) {
    const Field f = Field::of_order(p);
    for (int n = 1; n <= 2; ++n) {
      for (int trial = 0; trial < 50; ++trial) {
        const auto op = testing_util::random_poly(rng, p, n, 4, 4);
        if (op.empty()) continue;
        const std::vector<FieldElement> u{f.element(0), f.element(1)};
        EXPECT_TRUE(sz_mult_audit(testing_util::from_oracle(f, n, op), u).ok);
        EXPECT_TRUE(sz_mult_audit(testing_util::from_oracle(f, n, op), all_elements(f)).ok);
      }
    }
  }
}

TEST(Vanishing, DoubleRootAtOrigin) {
  const Field f = Field::of_order(5);
  const std::vector<MultiplicityTarget> targets{{pt(f, {0}), 2}};
  const VanishingResult r = find_vanishing_poly(f, 1, targets, 2);
  ASSERT_TRUE(std::holds_alternative<Polynomial>(r));
  EXPECT_EQ(std::get<Polynomial>(r), Polynomial::monomial(f, {2}, Field::one()));
}

TEST(Vanishing, AllOfF2Squared) {
  const Field f = Field::of_order(2);
  std::vector<MultiplicityTarget> targets;
  for (const Point& a : all_points(f, 2)) targets.push_back({a, 1});
  EXPECT_TRUE(vanishing_hypothesis_holds(2, targets, 2));
  const VanishingResult r = find_vanishing_poly(f, 2, targets, 2);
  ASSERT_TRUE(std::holds_alternative<Polynomial>(r));
  const Polynomial& p = std::get<Polynomial>(r);
  EXPECT_FALSE(p.is_zero());
  EXPECT_LE(p.degree(), 2);
  for (const Point& a : all_points(f, 2)) EXPECT_EQ(p.evaluate(a), Field::zero());
}

TEST(Vanishing, HypothesisBoundary) {
  const Field f = Field::of_order(3);
  const std::vector<MultiplicityTarget> targets{{pt(f, {0, 0}), 3}};
  EXPECT_FALSE(vanishing_hypothesis_holds(2, targets, 2));
  const VanishingResult r = find_vanishing_poly(f, 2, targets, 2);
  ASSERT_TRUE(std::holds_alternative<NoSolutionCertificate>(r));
  const auto& cert = std::get<NoSolutionCertificate>(r);
  EXPECT_EQ(cert.unknowns, 6u);
  EXPECT_EQ(cert.rank, 6u);
  EXPECT_FALSE(cert.hypothesis_held);
}

TEST(Vanishing, OutputsMeetTargets) {
  std::mt19937_64 rng(29);
  for (int p : {2, 3, 5}) {
    const Field f = Field::of_order(p);
    const auto points = all_points(f, 2);
    for (int trial = 0; trial < 30; ++trial) {
      std::vector<MultiplicityTarget> targets;
      for (const Point& a : points) {
        if (rng() % 3 == 0) targets.push_back({a, static_cast<std::uint32_t>(1 + rng() % 2)});
      }
      const std::uint32_t d = static_cast<std::uint32_t>(2 + rng() % 4);
      const VanishingResult r = find_vanishing_poly(f, 2, targets, d);
      if (vanishing_hypothesis_holds(2, targets, d)) ASSERT_TRUE(std::holds_alternative<Polynomial>(r));
      if (const auto* poly = std::get_if<Polynomial>(&r)) {
        EXPECT_FALSE(poly->is_zero());
        EXPECT_LE(poly->degree(), static_cast<std::int64_t>(d));
        for (const auto& t : targets) EXPECT_TRUE(multiplicity(*poly, t.point).at_least(t.multiplicity));
      }
    }
  }
}

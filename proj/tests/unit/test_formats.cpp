#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "flab/error.hpp"
#include "flab/formats.hpp"
#include "helpers.hpp"

using namespace flab;
using testing_util::code_of;
using testing_util::pt;

namespace {

template <class T, class W, class R>
T round_trip(const T& value, W write, R read) {
  std::stringstream io;
  write(io, value);
  return read(io);
}

std::string parse_message(const std::string& text, const std::function<void(std::istream&)>& read) {
  std::istringstream is(text);
  try {
    read(is);
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::ParseError);
    return e.what();
  }
  ADD_FAILURE() << "no error for:\n" << text;
  return {};
}

}  // namespace

TEST(Formats, PointSetExactText) {
  const AffineSpace space(Field::of_order(2), 2);
  std::ostringstream os;
  write_point_set(os, testing_util::subset(space, 0b0110));
  EXPECT_EQ(os.str(), "2 1 2\n0|1\n1|0\n");
}

TEST(Formats, ExtensionFieldText) {
  const Field f = Field::of_order(4);
  EXPECT_EQ(format_element(f, f.element(2)), "0 1");
  PointSet s(AffineSpace(f, 2));
  s.insert(pt(f, {2, 3}));
  std::ostringstream os;
  write_point_set(os, s);
  EXPECT_EQ(os.str(), "2 2 2\n1 1 1\n0 1|1 1\n");
}

TEST(Formats, PointSetRoundTrip) {
  std::mt19937_64 rng(47);
  for (std::uint32_t q : {2u, 3u, 4u, 8u, 9u, 25u}) {
    const AffineSpace space(Field::of_order(q), 2);
    PointSet s(space);
    for (int i = 0; i < 10; ++i) s.insert(space.point(rng() % space.size()));
    EXPECT_EQ(round_trip(s, write_point_set, read_point_set), s);
  }
}

TEST(Formats, DistributionRoundTrip) {
  const AffineSpace space(Field::of_order(9), 2);
  RationalDistribution d(space);
  d.add_index(3, 5);
  d.add_index(70, 1);
  d.add_index(80, 12);
  EXPECT_EQ(round_trip(d, write_distribution, read_distribution), d);
}

TEST(Formats, FlatFamilyRoundTrip) {
  for (std::size_t k = 0; k <= 2; ++k) {
    const AffineSpace space(Field::of_order(4), 2);
    const FlatFamily family = FlatFamily::of(space, enumerate_flats(space.field(), 2, k));
    EXPECT_EQ(round_trip(family, write_flat_family, read_flat_family), family);
  }
}

TEST(Formats, WitnessRoundTrip) {
  const AffineSpace space(Field::of_order(3), 3);
  const auto verdict = is_furstenberg(PointSet::whole(space), 2, 9);
  std::stringstream io;
  write_witness(io, space, verdict.witness);
  const WitnessFamily back = read_witness(io);
  ASSERT_EQ(back.size(), verdict.witness.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].direction, verdict.witness[i].direction);
    EXPECT_EQ(back[i].flat, verdict.witness[i].flat);
    EXPECT_EQ(back[i].count, verdict.witness[i].count);
  }
}

TEST(Formats, PolynomialRoundTrip) {
  const Field f = Field::of_order(9);
  Polynomial p(f, 3);
  p.add_term({2, 0, 1}, f.element(7));
  p.add_term({0, 0, 0}, f.element(1));
  p.add_term({1, 1, 1}, f.element(3));
  EXPECT_EQ(round_trip(p, write_polynomial, read_polynomial), p);
  std::ostringstream os;
  write_polynomial(os, Polynomial::monomial(Field::of_order(5), {1, 2}, Field::of_order(5).element(4)));
  EXPECT_EQ(os.str(), "5 1 2\n4 : 1 2\n");
}

TEST(Formats, CommentsAndBlankLines) {
  std::istringstream is("# a comment\n2 1 2\n\n1|1\n# trailing\n");
  const PointSet s = read_point_set(is);
  EXPECT_EQ(s.indices(), (std::vector<std::uint64_t>{3}));
}

TEST(Formats, ParseErrorsCarryLineNumbers) {
  EXPECT_NE(parse_message("2 1 2\n0|1\n0|1|1\n", [](std::istream& is) { read_point_set(is); }).find("line 3"),
            std::string::npos);
  EXPECT_NE(parse_message("2 1 2\n0|2\n", [](std::istream& is) { read_point_set(is); }).find("line 2"),
            std::string::npos);
  parse_message("6 1 2\n", [](std::istream& is) { read_point_set(is); });
  parse_message("", [](std::istream& is) { read_point_set(is); });
  parse_message("2 2 1\n1 0 1\n", [](std::istream& is) { read_point_set(is); });  // reducible modulus
  parse_message("3 1 1\n1 x\n", [](std::istream& is) { read_distribution(is); });
  parse_message("3 1 2\n1 : 1\n", [](std::istream& is) { read_polynomial(is); });
  EXPECT_EQ(code_of([] { load_point_set("/nonexistent/file.pts"); }), Errc::ParseError);
}

TEST(Formats, ParseRational) {
  EXPECT_EQ(parse_rational("3/4"), Rational(3, 4));
  EXPECT_EQ(parse_rational("-2"), Rational(-2));
  EXPECT_EQ(parse_rational("6/8"), Rational(3, 4));
  EXPECT_EQ(code_of([] { parse_rational("1/0"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_rational("a/2"); }), Errc::ParseError);
}

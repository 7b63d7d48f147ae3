#pragma once

// Text formats for point sets, distributions, flat families, witnesses and
// polynomials.
//
// Every file starts with a header line `p e n`, followed by the field modulus
// (e + 1 coefficients, low degree first) when e > 1. A field element is
// written as its e base-p digits, low degree first, separated by spaces; a
// point is its n elements separated by `|`.
//
//   point set      one point per line
//   distribution   one point per line followed by a positive integer weight
//   flat family    `row / row / ... ; shift` per line (RREF basis rows)
//   witness        `row / ... ; shift ; count` per line
//   polynomial     `coeff : e1 e2 ... en` per term
//
// Blank lines and lines starting with `#` are ignored. Parse failures throw
// ParseError with the line number.

#include <iosfwd>
#include <string>

#include "flab/entropy.hpp"
#include "flab/furstenberg.hpp"
#include "flab/geometry.hpp"
#include "flab/incidence.hpp"
#include "flab/polymethod.hpp"

namespace flab {

std::string format_element(const Field& field, FieldElement x);
std::string format_point(const Field& field, std::span<const FieldElement> point);
std::string format_flat(const Field& field, const Flat& flat);

void write_point_set(std::ostream& os, const PointSet& s);
PointSet read_point_set(std::istream& is);

void write_distribution(std::ostream& os, const RationalDistribution& dist);
RationalDistribution read_distribution(std::istream& is);

void write_flat_family(std::ostream& os, const FlatFamily& family);
FlatFamily read_flat_family(std::istream& is);

void write_witness(std::ostream& os, const AffineSpace& space, const WitnessFamily& witness);
WitnessFamily read_witness(std::istream& is);

void write_polynomial(std::ostream& os, const Polynomial& p);
Polynomial read_polynomial(std::istream& is);

/// File-path conveniences; throw ParseError when the file cannot be opened.
PointSet load_point_set(const std::string& path);
RationalDistribution load_distribution(const std::string& path);
FlatFamily load_flat_family(const std::string& path);
Polynomial load_polynomial(const std::string& path);

}  // namespace flab

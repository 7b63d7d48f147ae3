#pragma once

// Sparse multivariate polynomials over F_q and the multiplicity toolkit:
// Hasse derivatives, multiplicity at a point, restriction to a line,
// homogeneous top part, the Schwartz-Zippel multiplicity audit, and
// interpolation of a polynomial vanishing to prescribed multiplicities.

#include <compare>
#include <cstdint>
#include <map>
#include <span>
#include <variant>
#include <vector>

#include "flab/exact.hpp"
#include "flab/geometry.hpp"
#include "flab/gf.hpp"

namespace flab {

using Multidegree = std::vector<std::uint32_t>;

std::uint32_t weight(const Multidegree& exponents) noexcept;

/// Graded lexicographic order, ascending: lower total degree first, then
/// lexicographic on exponents with x_1 most significant.
struct GradedLexLess {
  bool operator()(const Multidegree& a, const Multidegree& b) const noexcept;
};

/// binom(a, i) reduced mod p via Lucas' theorem.
std::uint32_t binomial_mod(std::uint64_t a, std::uint64_t i, std::uint32_t p) noexcept;

class Polynomial {
 public:
  using Terms = std::map<Multidegree, FieldElement, GradedLexLess>;

  Polynomial(Field field, std::size_t num_vars) : field_(std::move(field)), n_(num_vars) {}

  static Polynomial constant(const Field& field, std::size_t num_vars, FieldElement c);
  static Polynomial variable(const Field& field, std::size_t num_vars, std::size_t i);
  static Polynomial monomial(const Field& field, Multidegree exponents, FieldElement c);

  const Field& field() const noexcept { return field_; }
  std::size_t num_vars() const noexcept { return n_; }
  const Terms& terms() const noexcept { return terms_; }

  bool is_zero() const noexcept { return terms_.empty(); }
  /// Total degree; -1 for the zero polynomial.
  std::int64_t degree() const noexcept;

  FieldElement coefficient(const Multidegree& exponents) const;
  /// Adds c * x^exponents, dropping the term if it cancels.
  void add_term(const Multidegree& exponents, FieldElement c);

  FieldElement evaluate(std::span<const FieldElement> point) const;

  Polynomial operator+(const Polynomial& rhs) const;
  Polynomial operator-(const Polynomial& rhs) const;
  Polynomial operator*(const Polynomial& rhs) const;
  Polynomial scaled(FieldElement c) const;

  friend bool operator==(const Polynomial& a, const Polynomial& b) noexcept {
    return a.n_ == b.n_ && a.field_ == b.field_ && a.terms_ == b.terms_;
  }

 private:
  Field field_;
  std::size_t n_;
  Terms terms_;
};

/// P^{(i)}: coefficient of z^i in P(x + z).
Polynomial hasse_derivative(const Polynomial& p, const Multidegree& i);
/// P^{(i)}(a) without materializing the derivative.
FieldElement hasse_derivative_at(const Polynomial& p, const Multidegree& i, std::span<const FieldElement> a);

/// Multidegrees of the given weight in n variables, ascending graded lex.
std::vector<Multidegree> multidegrees_of_weight(std::size_t n, std::uint32_t w);

class Multiplicity {
 public:
  constexpr Multiplicity() = default;
  constexpr explicit Multiplicity(std::uint32_t value) : value_(value) {}
  static constexpr Multiplicity infinite() {
    Multiplicity m;
    m.infinite_ = true;
    return m;
  }

  constexpr bool is_infinite() const noexcept { return infinite_; }
  /// Finite value; meaningless when infinite.
  constexpr std::uint32_t value() const noexcept { return value_; }
  constexpr bool at_least(std::uint32_t n) const noexcept { return infinite_ || value_ >= n; }

  friend constexpr bool operator==(Multiplicity a, Multiplicity b) noexcept {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(Multiplicity a, Multiplicity b) noexcept {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }

 private:
  std::uint32_t value_ = 0;
  bool infinite_ = false;
};

/// Largest N with every Hasse derivative of weight < N vanishing at a.
/// Infinite for the zero polynomial.
Multiplicity multiplicity(const Polynomial& p, std::span<const FieldElement> a);

/// P(a + b t) as a univariate polynomial in t. Throws ZeroDirection for b = 0.
Polynomial restrict_to_line(const Polynomial& p, std::span<const FieldElement> a, std::span<const FieldElement> b);

/// Sum of the terms of maximal total degree. Throws ZeroPolynomial.
Polynomial homogeneous_part(const Polynomial& p);

struct SzAudit {
  BigInt sum;    // sum of mult(P, a) over a in U^n
  BigInt bound;  // deg(P) * |U|^{n-1}
  bool ok = false;
};

/// Throws ZeroPolynomial.
SzAudit sz_mult_audit(const Polynomial& p, std::span<const FieldElement> subset);

struct MultiplicityTarget {
  Point point;
  std::uint32_t multiplicity = 0;
};

/// The linear system had only the trivial solution.
struct NoSolutionCertificate {
  std::size_t unknowns = 0;
  std::size_t equations = 0;
  std::size_t rank = 0;
  bool hypothesis_held = false;
};

using VanishingResult = std::variant<Polynomial, NoSolutionCertificate>;

/// Monomials of total degree <= d in descending graded lex order; this is the
/// column order of the interpolation system.
std::vector<Multidegree> monomials_up_to(std::size_t n, std::uint32_t d);

/// sum_x binom(N_x + n - 1, n) < binom(d + n, n).
bool vanishing_hypothesis_holds(std::size_t n, std::span<const MultiplicityTarget> targets, std::uint32_t d);

/// Nonzero P of degree <= d with mult(P, x) >= N_x for every target, taken as
/// the kernel vector with the first free column set to 1 and the other free
/// columns 0; or a certificate that the kernel is trivial.
VanishingResult find_vanishing_poly(const Field& field, std::size_t n, std::span<const MultiplicityTarget> targets,
                                    std::uint32_t d);

}  // namespace flab

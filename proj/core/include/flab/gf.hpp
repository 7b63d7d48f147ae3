#pragma once

// Exact arithmetic in F_q, q = p^e <= 2^16.
//
// An element of F_{p^e} is a coefficient vector (c_0, ..., c_{e-1}) over Z_p
// of a polynomial reduced modulo a fixed monic irreducible polynomial. It is
// stored packed as the base-p integer sum c_i p^i, so equal elements have
// equal codes and code order is the lexicographic order used everywhere for
// deterministic enumeration.

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace flab {

inline constexpr std::uint32_t kMaxFieldOrder = 1U << 16U;

struct FieldElement {
  std::uint32_t code = 0;

  friend constexpr auto operator<=>(FieldElement, FieldElement) = default;
};

struct FieldSpec {
  std::uint32_t p = 2;
  std::uint32_t e = 1;
  std::uint32_t q = 2;
  /// Monic modulus, low degree first, e + 1 entries. Empty for prime fields.
  std::vector<std::uint32_t> modulus;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;
};

bool is_prime(std::uint64_t n) noexcept;

/// (p, e) with q = p^e, or nullopt when q is not a prime power.
std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) noexcept;

/// Exhaustive trial division by every monic polynomial of degree <= deg/2.
bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p);

/// Lexicographically smallest monic irreducible polynomial of degree e over
/// F_p, comparing coefficients low degree first.
FieldSpec field_build(std::uint32_t p, std::uint32_t e);

class Field {
 public:
  /// Checks p prime, q = p^e <= 2^16, modulus monic irreducible.
  explicit Field(FieldSpec spec);

  static Field build(std::uint32_t p, std::uint32_t e) { return Field(field_build(p, e)); }
  /// Builds F_q from its order (q must be a prime power).
  static Field of_order(std::uint64_t q);

  const FieldSpec& spec() const noexcept;
  std::uint32_t characteristic() const noexcept { return spec().p; }
  std::uint32_t degree() const noexcept { return spec().e; }
  std::uint32_t order() const noexcept { return spec().q; }

  static constexpr FieldElement zero() noexcept { return FieldElement{0}; }
  static constexpr FieldElement one() noexcept { return FieldElement{1}; }

  /// Element with the given packed code; throws BadRange if code >= q.
  FieldElement element(std::uint32_t code) const;
  /// Image of an integer in the prime subfield.
  FieldElement from_integer(std::int64_t value) const noexcept;

  FieldElement add(FieldElement a, FieldElement b) const noexcept;
  FieldElement sub(FieldElement a, FieldElement b) const noexcept;
  FieldElement neg(FieldElement a) const noexcept;
  FieldElement mul(FieldElement a, FieldElement b) const noexcept;
  /// Throws DivisionByZero for a == 0.
  FieldElement inv(FieldElement a) const;
  FieldElement div(FieldElement a, FieldElement b) const { return mul(a, inv(b)); }
  FieldElement pow(FieldElement a, std::uint64_t exp) const noexcept;

  std::vector<std::uint32_t> coefficients(FieldElement a) const;
  /// Throws BadRange unless digits has e entries, each in [0, p).
  FieldElement from_coefficients(std::span<const std::uint32_t> digits) const;

  friend bool operator==(const Field& a, const Field& b) noexcept;

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
};

enum class FieldOp { Add, Mul, Neg, Inv };

/// Single dispatch point over the four primitive operations.
FieldElement field_arith(const Field& field, FieldOp op, FieldElement a,
                         std::optional<FieldElement> b = std::nullopt);

/// F_{q^k} viewed as a k-dimensional vector space over F_q with basis
/// 1, x, ..., x^{k-1}, where x is the generator of the larger field. When the
/// base field is prime this is plain coefficient flattening.
class FieldExtension {
 public:
  /// Throws IncompatibleFields unless both fields share p and base.e | big.e.
  FieldExtension(Field base, Field big);

  const Field& base() const noexcept { return base_; }
  const Field& big() const noexcept { return big_; }
  std::uint32_t degree() const noexcept { return degree_; }

  FieldElement embed(FieldElement base_element) const;
  /// Coordinates of a big-field element over the base field.
  std::span<const FieldElement> coordinates(FieldElement big_element) const;
  FieldElement combine(std::span<const FieldElement> coords) const;

 private:
  Field base_;
  Field big_;
  std::uint32_t degree_ = 1;
  std::vector<FieldElement> embed_;
  std::vector<FieldElement> coords_;  // q_big * degree entries
};

/// F_q-linear bijection F_{q^k}^r -> F_q^{rk}: coordinate j of v expands to
/// entries [j*k, (j+1)*k).
std::vector<FieldElement> base_vector_iso(const FieldExtension& ext,
                                          std::span<const FieldElement> v);
std::vector<FieldElement> base_vector_iso_inverse(const FieldExtension& ext,
                                                  std::span<const FieldElement> w);

}  // namespace flab

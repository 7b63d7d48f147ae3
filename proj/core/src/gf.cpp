#include "flab/gf.hpp"

#include <algorithm>
#include <string>

#include "flab/error.hpp"

namespace flab {

namespace {

using Poly = std::vector<std::uint32_t>;  // low degree first, over Z_p

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// Remainder of a modulo a monic divisor.
Poly poly_mod(Poly a, const Poly& monic, std::uint32_t p) {
  trim(a);
  const std::size_t dd = monic.size() - 1;
  while (a.size() > dd) {
    const std::uint64_t lead = a.back();
    const std::size_t shift = a.size() - 1 - dd;
    for (std::size_t i = 0; i <= dd; ++i) {
      const std::uint64_t sub = lead * monic[i] % p;
      a[shift + i] = static_cast<std::uint32_t>((a[shift + i] + p - sub) % p);
    }
    trim(a);
  }
  return a;
}

std::uint64_t ipow(std::uint64_t b, std::uint32_t e) {
  std::uint64_t r = 1;
  while (e-- != 0) r *= b;
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) noexcept {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

std::optional<std::pair<std::uint32_t, std::uint32_t>> prime_power(std::uint64_t q) noexcept {
  if (q < 2) return std::nullopt;
  std::uint64_t p = 0;
  for (std::uint64_t d = 2; d * d <= q; ++d) {
    if (q % d == 0) {
      p = d;
      break;
    }
  }
  if (p == 0) return std::make_pair(static_cast<std::uint32_t>(q), 1U);
  std::uint32_t e = 0;
  while (q % p == 0) {
    q /= p;
    ++e;
  }
  if (q != 1) return std::nullopt;
  return std::make_pair(static_cast<std::uint32_t>(p), e);
}

bool is_irreducible(std::span<const std::uint32_t> poly, std::uint32_t p) {
  Poly f(poly.begin(), poly.end());
  trim(f);
  if (f.size() < 2) return false;
  const std::size_t deg = f.size() - 1;
  if (deg == 1) return true;
  // Normalize to monic so poly_mod applies to both f and candidate divisors.
  if (f.back() != 1) {
    std::uint64_t inv = 1;
    for (std::uint64_t i = 1; i < p; ++i) {
      if (f.back() * i % p == 1) inv = i;
    }
    for (auto& c : f) c = static_cast<std::uint32_t>(c * inv % p);
  }
  for (std::size_t d = 1; d <= deg / 2; ++d) {
    const std::uint64_t count = ipow(p, static_cast<std::uint32_t>(d));
    Poly g(d + 1, 0);
    g[d] = 1;
    for (std::uint64_t code = 0; code < count; ++code) {
      std::uint64_t c = code;
      for (std::size_t i = 0; i < d; ++i) {
        g[i] = static_cast<std::uint32_t>(c % p);
        c /= p;
      }
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

FieldSpec field_build(std::uint32_t p, std::uint32_t e) {
  require(is_prime(p), Errc::CompositeP, "p = " + std::to_string(p) + " is not prime");
  require(e >= 1, Errc::BadRange, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < e; ++i) {
    q *= p;
    require(q <= kMaxFieldOrder, Errc::FieldTooLarge,
            std::to_string(p) + "^" + std::to_string(e) + " exceeds 2^16");
  }
  FieldSpec spec{p, e, static_cast<std::uint32_t>(q), {}};
  if (e == 1) return spec;

  // Candidates (c_0, ..., c_{e-1}) in lexicographic order with c_0 most
  // significant.
  Poly cand(e + 1, 0);
  cand[e] = 1;
  for (std::uint64_t idx = 0; idx < q; ++idx) {
    std::uint64_t c = idx;
    for (std::uint32_t i = e; i-- > 0;) {
      cand[i] = static_cast<std::uint32_t>(c % p);
      c /= p;
    }
    if (is_irreducible(cand, p)) {
      spec.modulus = cand;
      return spec;
    }
  }
  raise(Errc::BadRange, "no irreducible polynomial found");  // unreachable for prime p
}

struct Field::Impl {
  FieldSpec spec;
  bool tabled = false;
  std::vector<std::uint16_t> add_tab;
  std::vector<std::uint16_t> mul_tab;
  std::vector<std::uint16_t> neg_tab;
  std::vector<std::uint16_t> inv_tab;
  std::vector<std::uint32_t> pw;  // p^i

  Poly digits(std::uint32_t code) const {
    Poly d(spec.e);
    for (std::uint32_t i = 0; i < spec.e; ++i) {
      d[i] = code % spec.p;
      code /= spec.p;
    }
    return d;
  }
  std::uint32_t pack(const Poly& d) const {
    std::uint32_t code = 0;
    for (std::size_t i = 0; i < d.size() && i < spec.e; ++i) code += d[i] * pw[i];
    return code;
  }

  std::uint32_t slow_add(std::uint32_t a, std::uint32_t b) const {
    if (spec.e == 1) return (a + b) % spec.p;
    std::uint32_t code = 0;
    for (std::uint32_t i = 0; i < spec.e; ++i) {
      code += ((a % spec.p + b % spec.p) % spec.p) * pw[i];
      a /= spec.p;
      b /= spec.p;
    }
    return code;
  }
  std::uint32_t slow_neg(std::uint32_t a) const {
    if (spec.e == 1) return (spec.p - a) % spec.p;
    std::uint32_t code = 0;
    for (std::uint32_t i = 0; i < spec.e; ++i) {
      code += ((spec.p - a % spec.p) % spec.p) * pw[i];
      a /= spec.p;
    }
    return code;
  }
  std::uint32_t slow_mul(std::uint32_t a, std::uint32_t b) const {
    if (spec.e == 1) {
      return static_cast<std::uint32_t>(static_cast<std::uint64_t>(a) * b % spec.p);
    }
    const Poly x = digits(a);
    const Poly y = digits(b);
    Poly prod(2 * spec.e - 1, 0);
    for (std::uint32_t i = 0; i < spec.e; ++i) {
      if (x[i] == 0) continue;
      for (std::uint32_t j = 0; j < spec.e; ++j) {
        prod[i + j] = static_cast<std::uint32_t>(
            (prod[i + j] + static_cast<std::uint64_t>(x[i]) * y[j]) % spec.p);
      }
    }
    return pack(poly_mod(std::move(prod), spec.modulus, spec.p));
  }
  std::uint32_t slow_pow(std::uint32_t a, std::uint64_t exp) const {
    std::uint32_t result = 1;
    while (exp != 0) {
      if (exp & 1U) result = slow_mul(result, a);
      a = slow_mul(a, a);
      exp >>= 1U;
    }
    return result;
  }
};

Field::Field(FieldSpec spec) {
  require(is_prime(spec.p), Errc::CompositeP, "p = " + std::to_string(spec.p) + " is not prime");
  require(spec.e >= 1, Errc::BadRange, "extension degree must be >= 1");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < spec.e; ++i) {
    q *= spec.p;
    require(q <= kMaxFieldOrder, Errc::FieldTooLarge, "field order exceeds 2^16");
  }
  require(spec.q == q, Errc::BadRange, "q does not equal p^e");
  if (spec.e == 1) {
    require(spec.modulus.empty(), Errc::BadRange, "prime field must have an empty modulus");
  } else {
    require(spec.modulus.size() == spec.e + 1 && spec.modulus.back() == 1, Errc::BadRange,
            "modulus must be monic of degree e");
    for (auto c : spec.modulus) require(c < spec.p, Errc::BadRange, "modulus coefficient >= p");
    require(is_irreducible(spec.modulus, spec.p), Errc::BadRange, "modulus is reducible");
  }

  auto impl = std::make_shared<Impl>();
  impl->spec = std::move(spec);
  impl->pw.resize(impl->spec.e + 1);
  impl->pw[0] = 1;
  for (std::uint32_t i = 1; i <= impl->spec.e; ++i) impl->pw[i] = impl->pw[i - 1] * impl->spec.p;

  const std::uint32_t order = impl->spec.q;
  if (order <= 256) {
    impl->tabled = true;
    impl->add_tab.resize(static_cast<std::size_t>(order) * order);
    impl->mul_tab.resize(static_cast<std::size_t>(order) * order);
    impl->neg_tab.resize(order);
    impl->inv_tab.assign(order, 0);
    for (std::uint32_t a = 0; a < order; ++a) {
      impl->neg_tab[a] = static_cast<std::uint16_t>(impl->slow_neg(a));
      for (std::uint32_t b = 0; b < order; ++b) {
        impl->add_tab[a * order + b] = static_cast<std::uint16_t>(impl->slow_add(a, b));
        const auto m = impl->slow_mul(a, b);
        impl->mul_tab[a * order + b] = static_cast<std::uint16_t>(m);
        if (m == 1) impl->inv_tab[a] = static_cast<std::uint16_t>(b);
      }
    }
  }
  impl_ = std::move(impl);
}

Field Field::of_order(std::uint64_t q) {
  const auto pe = prime_power(q);
  require(pe.has_value(), Errc::CompositeP, std::to_string(q) + " is not a prime power");
  return build(pe->first, pe->second);
}

const FieldSpec& Field::spec() const noexcept { return impl_->spec; }

FieldElement Field::element(std::uint32_t code) const {
  require(code < order(), Errc::BadRange, "element code out of range");
  return FieldElement{code};
}

FieldElement Field::from_integer(std::int64_t value) const noexcept {
  const auto p = static_cast<std::int64_t>(characteristic());
  return FieldElement{static_cast<std::uint32_t>(((value % p) + p) % p)};
}

FieldElement Field::add(FieldElement a, FieldElement b) const noexcept {
  const Impl& s = *impl_;
  if (s.spec.e == 1) {
    const std::uint32_t r = a.code + b.code;
    return FieldElement{r >= s.spec.p ? r - s.spec.p : r};
  }
  if (s.tabled) return FieldElement{s.add_tab[a.code * s.spec.q + b.code]};
  return FieldElement{s.slow_add(a.code, b.code)};
}

FieldElement Field::neg(FieldElement a) const noexcept {
  const Impl& s = *impl_;
  if (s.spec.e == 1) return FieldElement{a.code == 0 ? 0 : s.spec.p - a.code};
  if (s.tabled) return FieldElement{s.neg_tab[a.code]};
  return FieldElement{s.slow_neg(a.code)};
}

FieldElement Field::sub(FieldElement a, FieldElement b) const noexcept { return add(a, neg(b)); }

FieldElement Field::mul(FieldElement a, FieldElement b) const noexcept {
  const Impl& s = *impl_;
  if (s.tabled) return FieldElement{s.mul_tab[a.code * s.spec.q + b.code]};
  return FieldElement{s.slow_mul(a.code, b.code)};
}

FieldElement Field::inv(FieldElement a) const {
  require(a.code != 0, Errc::DivisionByZero, "inverse of zero");
  const Impl& s = *impl_;
  if (s.tabled) return FieldElement{s.inv_tab[a.code]};
  return FieldElement{s.slow_pow(a.code, s.spec.q - 2)};
}

FieldElement Field::pow(FieldElement a, std::uint64_t exp) const noexcept {
  FieldElement result = one();
  while (exp != 0) {
    if (exp & 1U) result = mul(result, a);
    a = mul(a, a);
    exp >>= 1U;
  }
  return result;
}

std::vector<std::uint32_t> Field::coefficients(FieldElement a) const { return impl_->digits(a.code); }

FieldElement Field::from_coefficients(std::span<const std::uint32_t> digits) const {
  require(digits.size() == degree(), Errc::BadRange, "expected " + std::to_string(degree()) + " digits");
  for (auto d : digits) require(d < characteristic(), Errc::BadRange, "digit out of range");
  return FieldElement{impl_->pack(Poly(digits.begin(), digits.end()))};
}

bool operator==(const Field& a, const Field& b) noexcept {
  return a.impl_ == b.impl_ || a.spec() == b.spec();
}

FieldElement field_arith(const Field& field, FieldOp op, FieldElement a, std::optional<FieldElement> b) {
  switch (op) {
    case FieldOp::Add:
      require(b.has_value(), Errc::BadRange, "add needs two operands");
      return field.add(a, *b);
    case FieldOp::Mul:
      require(b.has_value(), Errc::BadRange, "mul needs two operands");
      return field.mul(a, *b);
    case FieldOp::Neg: return field.neg(a);
    case FieldOp::Inv: return field.inv(a);
  }
  return a;
}

FieldExtension::FieldExtension(Field base, Field big) : base_(std::move(base)), big_(std::move(big)) {
  require(base_.characteristic() == big_.characteristic() && big_.degree() % base_.degree() == 0,
          Errc::IncompatibleFields,
          "F_" + std::to_string(base_.order()) + " is not a subfield of F_" + std::to_string(big_.order()));
  degree_ = big_.degree() / base_.degree();

  // Embed the base field by sending its generator to the smallest root of its
  // modulus inside the big field.
  const std::uint32_t qb = base_.order();
  embed_.resize(qb);
  if (base_.degree() == 1) {
    for (std::uint32_t c = 0; c < qb; ++c) embed_[c] = big_.from_integer(c);
  } else {
    const auto& h = base_.spec().modulus;
    std::optional<FieldElement> root;
    for (std::uint32_t code = 0; code < big_.order() && !root; ++code) {
      const FieldElement beta{code};
      FieldElement acc = Field::zero();
      for (std::size_t i = h.size(); i-- > 0;) acc = big_.add(big_.mul(acc, beta), big_.from_integer(h[i]));
      if (acc == Field::zero()) root = beta;
    }
    require(root.has_value(), Errc::IncompatibleFields, "base modulus has no root in the big field");
    for (std::uint32_t c = 0; c < qb; ++c) {
      const auto digits = base_.coefficients(FieldElement{c});
      FieldElement acc = Field::zero();
      for (std::size_t i = digits.size(); i-- > 0;) acc = big_.add(big_.mul(acc, *root), big_.from_integer(digits[i]));
      embed_[c] = acc;
    }
  }

  // Basis 1, x, ..., x^{k-1}; enumerate every combination once.
  const FieldElement x = big_.degree() > 1 ? FieldElement{big_.characteristic()} : Field::one();
  std::vector<FieldElement> basis(degree_);
  basis[0] = Field::one();
  for (std::uint32_t j = 1; j < degree_; ++j) basis[j] = big_.mul(basis[j - 1], x);

  coords_.assign(static_cast<std::size_t>(big_.order()) * degree_, Field::zero());
  std::vector<bool> seen(big_.order(), false);
  std::vector<std::uint32_t> tuple(degree_, 0);
  for (std::uint64_t idx = 0; idx < big_.order(); ++idx) {
    std::uint64_t c = idx;
    FieldElement value = Field::zero();
    for (std::uint32_t j = 0; j < degree_; ++j) {
      tuple[j] = static_cast<std::uint32_t>(c % qb);
      c /= qb;
      value = big_.add(value, big_.mul(embed_[tuple[j]], basis[j]));
    }
    require(!seen[value.code], Errc::IncompatibleFields, "basis is not independent");
    seen[value.code] = true;
    for (std::uint32_t j = 0; j < degree_; ++j) coords_[value.code * degree_ + j] = FieldElement{tuple[j]};
  }
}

FieldElement FieldExtension::embed(FieldElement base_element) const {
  require(base_element.code < base_.order(), Errc::BadRange, "element not in base field");
  return embed_[base_element.code];
}

std::span<const FieldElement> FieldExtension::coordinates(FieldElement big_element) const {
  require(big_element.code < big_.order(), Errc::BadRange, "element not in big field");
  return {coords_.data() + static_cast<std::size_t>(big_element.code) * degree_, degree_};
}

FieldElement FieldExtension::combine(std::span<const FieldElement> coords) const {
  require(coords.size() == degree_, Errc::DimensionMismatch, "coordinate count must equal extension degree");
  const FieldElement x = big_.degree() > 1 ? FieldElement{big_.characteristic()} : Field::one();
  FieldElement acc = Field::zero();
  for (std::size_t j = coords.size(); j-- > 0;) acc = big_.add(big_.mul(acc, x), embed(coords[j]));
  return acc;
}

std::vector<FieldElement> base_vector_iso(const FieldExtension& ext, std::span<const FieldElement> v) {
  std::vector<FieldElement> out;
  out.reserve(v.size() * ext.degree());
  for (auto c : v) {
    const auto coords = ext.coordinates(c);
    out.insert(out.end(), coords.begin(), coords.end());
  }
  return out;
}

std::vector<FieldElement> base_vector_iso_inverse(const FieldExtension& ext, std::span<const FieldElement> w) {
  const std::size_t k = ext.degree();
  require(w.size() % k == 0, Errc::DimensionMismatch, "length is not a multiple of the extension degree");
  std::vector<FieldElement> out;
  out.reserve(w.size() / k);
  for (std::size_t j = 0; j < w.size(); j += k) out.push_back(ext.combine(w.subspan(j, k)));
  return out;
}

}  // namespace flab

#include "flab/polymethod.hpp"

#include <algorithm>
#include <numeric>

#include "flab/error.hpp"

namespace flab {

std::uint32_t weight(const Multidegree& exponents) noexcept {
  return std::accumulate(exponents.begin(), exponents.end(), std::uint32_t{0});
}

bool GradedLexLess::operator()(const Multidegree& a, const Multidegree& b) const noexcept {
  const auto wa = weight(a);
  const auto wb = weight(b);
  if (wa != wb) return wa < wb;
  return a < b;
}

std::uint32_t binomial_mod(std::uint64_t a, std::uint64_t i, std::uint32_t p) noexcept {
  if (i > a) return 0;
  std::uint64_t result = 1;
  while (a != 0 || i != 0) {
    const std::uint64_t ad = a % p;
    const std::uint64_t id = i % p;
    if (id > ad) return 0;
    // binom(ad, id) with ad < p fits comfortably in 64 bits for p <= 2^16
    // when built multiplicatively modulo p with inverses by Fermat.
    std::uint64_t num = 1;
    std::uint64_t den = 1;
    for (std::uint64_t j = 0; j < id; ++j) {
      num = num * ((ad - j) % p) % p;
      den = den * ((j + 1) % p) % p;
    }
    std::uint64_t inv = 1;
    std::uint64_t base = den;
    std::uint64_t e = p - 2;
    while (e != 0) {
      if (e & 1U) inv = inv * base % p;
      base = base * base % p;
      e >>= 1U;
    }
    result = result * (num * inv % p) % p;
    a /= p;
    i /= p;
  }
  return static_cast<std::uint32_t>(result);
}

Polynomial Polynomial::constant(const Field& field, std::size_t num_vars, FieldElement c) {
  Polynomial p(field, num_vars);
  p.add_term(Multidegree(num_vars, 0), c);
  return p;
}

Polynomial Polynomial::variable(const Field& field, std::size_t num_vars, std::size_t i) {
  require(i < num_vars, Errc::BadRange, "variable index out of range");
  Multidegree e(num_vars, 0);
  e[i] = 1;
  Polynomial p(field, num_vars);
  p.add_term(e, Field::one());
  return p;
}

Polynomial Polynomial::monomial(const Field& field, Multidegree exponents, FieldElement c) {
  Polynomial p(field, exponents.size());
  p.add_term(exponents, c);
  return p;
}

std::int64_t Polynomial::degree() const noexcept {
  if (terms_.empty()) return -1;
  return weight(terms_.rbegin()->first);
}

FieldElement Polynomial::coefficient(const Multidegree& exponents) const {
  const auto it = terms_.find(exponents);
  return it == terms_.end() ? Field::zero() : it->second;
}

void Polynomial::add_term(const Multidegree& exponents, FieldElement c) {
  require(exponents.size() == n_, Errc::DimensionMismatch, "multidegree length differs from variable count");
  if (c == Field::zero()) return;
  auto [it, inserted] = terms_.try_emplace(exponents, c);
  if (inserted) return;
  it->second = field_.add(it->second, c);
  if (it->second == Field::zero()) terms_.erase(it);
}

FieldElement Polynomial::evaluate(std::span<const FieldElement> point) const {
  require(point.size() == n_, Errc::DimensionMismatch, "evaluation point has the wrong length");
  FieldElement acc = Field::zero();
  for (const auto& [exps, c] : terms_) {
    FieldElement term = c;
    for (std::size_t j = 0; j < n_; ++j) {
      if (exps[j] != 0) term = field_.mul(term, field_.pow(point[j], exps[j]));
    }
    acc = field_.add(acc, term);
  }
  return acc;
}

Polynomial Polynomial::operator+(const Polynomial& rhs) const {
  require(n_ == rhs.n_ && field_ == rhs.field_, Errc::DimensionMismatch, "polynomials over different rings");
  Polynomial out = *this;
  for (const auto& [e, c] : rhs.terms_) out.add_term(e, c);
  return out;
}

Polynomial Polynomial::operator-(const Polynomial& rhs) const { return *this + rhs.scaled(field_.neg(Field::one())); }

Polynomial Polynomial::operator*(const Polynomial& rhs) const {
  require(n_ == rhs.n_ && field_ == rhs.field_, Errc::DimensionMismatch, "polynomials over different rings");
  Polynomial out(field_, n_);
  Multidegree e(n_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : rhs.terms_) {
      for (std::size_t j = 0; j < n_; ++j) e[j] = ea[j] + eb[j];
      out.add_term(e, field_.mul(ca, cb));
    }
  }
  return out;
}

Polynomial Polynomial::scaled(FieldElement c) const {
  Polynomial out(field_, n_);
  for (const auto& [e, a] : terms_) out.add_term(e, field_.mul(a, c));
  return out;
}

namespace {

// Product of per-coordinate binomials binom(t_j, i_j) mod p; zero unless t >= i.
FieldElement hasse_factor(const Field& field, const Multidegree& t, const Multidegree& i) {
  std::uint64_t acc = 1;
  const std::uint32_t p = field.characteristic();
  for (std::size_t j = 0; j < t.size(); ++j) {
    if (i[j] > t[j]) return Field::zero();
    acc = acc * binomial_mod(t[j], i[j], p) % p;
    if (acc == 0) return Field::zero();
  }
  return field.from_integer(static_cast<std::int64_t>(acc));
}

void compositions(std::size_t n, std::uint32_t w, std::size_t pos, Multidegree& cur, std::vector<Multidegree>& out) {
  if (pos + 1 == n) {
    cur[pos] = w;
    out.push_back(cur);
    return;
  }
  for (std::uint32_t v = 0; v <= w; ++v) {
    cur[pos] = v;
    compositions(n, w - v, pos + 1, cur, out);
  }
}

}  // namespace

Polynomial hasse_derivative(const Polynomial& p, const Multidegree& i) {
  require(i.size() == p.num_vars(), Errc::DimensionMismatch, "derivative order has the wrong length");
  const Field& field = p.field();
  Polynomial out(field, p.num_vars());
  Multidegree e(p.num_vars());
  for (const auto& [t, c] : p.terms()) {
    const FieldElement f = hasse_factor(field, t, i);
    if (f == Field::zero()) continue;
    for (std::size_t j = 0; j < t.size(); ++j) e[j] = t[j] - i[j];
    out.add_term(e, field.mul(c, f));
  }
  return out;
}

FieldElement hasse_derivative_at(const Polynomial& p, const Multidegree& i, std::span<const FieldElement> a) {
  require(i.size() == p.num_vars() && a.size() == p.num_vars(), Errc::DimensionMismatch,
          "derivative order or point has the wrong length");
  const Field& field = p.field();
  FieldElement acc = Field::zero();
  for (const auto& [t, c] : p.terms()) {
    const FieldElement f = hasse_factor(field, t, i);
    if (f == Field::zero()) continue;
    FieldElement term = field.mul(c, f);
    for (std::size_t j = 0; j < t.size() && term != Field::zero(); ++j) {
      const auto e = t[j] - i[j];
      if (e != 0) term = field.mul(term, field.pow(a[j], e));
    }
    acc = field.add(acc, term);
  }
  return acc;
}

std::vector<Multidegree> multidegrees_of_weight(std::size_t n, std::uint32_t w) {
  std::vector<Multidegree> out;
  if (n == 0) {
    if (w == 0) out.emplace_back();
    return out;
  }
  Multidegree cur(n, 0);
  compositions(n, w, 0, cur, out);
  return out;
}

Multiplicity multiplicity(const Polynomial& p, std::span<const FieldElement> a) {
  require(a.size() == p.num_vars(), Errc::DimensionMismatch, "point has the wrong length");
  if (p.is_zero()) return Multiplicity::infinite();
  const auto deg = static_cast<std::uint32_t>(p.degree());
  for (std::uint32_t w = 0; w <= deg; ++w) {
    for (const auto& i : multidegrees_of_weight(p.num_vars(), w)) {
      if (hasse_derivative_at(p, i, a) != Field::zero()) return Multiplicity(w);
    }
  }
  // The top-degree coefficient is itself a derivative of weight deg.
  raise(Errc::BadRange, "nonzero polynomial with no nonvanishing derivative");
}

Polynomial restrict_to_line(const Polynomial& p, std::span<const FieldElement> a, std::span<const FieldElement> b) {
  const std::size_t n = p.num_vars();
  require(a.size() == n && b.size() == n, Errc::DimensionMismatch, "line data has the wrong length");
  require(std::any_of(b.begin(), b.end(), [](FieldElement c) { return c != Field::zero(); }), Errc::ZeroDirection,
          "line direction is zero");
  const Field& field = p.field();
  using Dense = std::vector<FieldElement>;
  auto mul = [&](const Dense& x, const Dense& y) {
    Dense z(x.size() + y.size() - 1, Field::zero());
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] == Field::zero()) continue;
      for (std::size_t j = 0; j < y.size(); ++j) z[i + j] = field.add(z[i + j], field.mul(x[i], y[j]));
    }
    return z;
  };
  // powers[j][e] = (a_j + b_j t)^e
  std::vector<std::vector<Dense>> powers(n);
  for (const auto& [t, c] : p.terms()) {
    for (std::size_t j = 0; j < n; ++j) {
      auto& pw = powers[j];
      if (pw.empty()) pw.push_back(Dense{Field::one()});
      while (pw.size() <= t[j]) pw.push_back(mul(pw.back(), Dense{a[j], b[j]}));
    }
  }
  Dense acc(1, Field::zero());
  for (const auto& [t, c] : p.terms()) {
    Dense term{c};
    for (std::size_t j = 0; j < n; ++j) {
      if (t[j] != 0) term = mul(term, powers[j][t[j]]);
    }
    if (term.size() > acc.size()) acc.resize(term.size(), Field::zero());
    for (std::size_t i = 0; i < term.size(); ++i) acc[i] = field.add(acc[i], term[i]);
  }
  Polynomial out(field, 1);
  for (std::size_t e = 0; e < acc.size(); ++e) out.add_term(Multidegree{static_cast<std::uint32_t>(e)}, acc[e]);
  return out;
}

Polynomial homogeneous_part(const Polynomial& p) {
  require(!p.is_zero(), Errc::ZeroPolynomial, "homogeneous part of the zero polynomial");
  const auto deg = static_cast<std::uint32_t>(p.degree());
  Polynomial out(p.field(), p.num_vars());
  for (const auto& [t, c] : p.terms()) {
    if (weight(t) == deg) out.add_term(t, c);
  }
  return out;
}

SzAudit sz_mult_audit(const Polynomial& p, std::span<const FieldElement> subset) {
  require(!p.is_zero(), Errc::ZeroPolynomial, "the multiplicity Schwartz-Zippel bound needs a nonzero polynomial");
  std::vector<FieldElement> u(subset.begin(), subset.end());
  std::sort(u.begin(), u.end());
  u.erase(std::unique(u.begin(), u.end()), u.end());
  const std::size_t n = p.num_vars();

  SzAudit audit;
  audit.bound = BigInt(p.degree()) * pow_int(u.size(), n == 0 ? 0 : n - 1);
  if (!u.empty()) {
    std::vector<std::size_t> odo(n, 0);
    Point a(n);
    while (true) {
      for (std::size_t j = 0; j < n; ++j) a[j] = u[odo[j]];
      audit.sum += multiplicity(p, a).value();
      std::size_t j = n;
      while (j-- > 0) {
        if (++odo[j] < u.size()) break;
        odo[j] = 0;
      }
      if (j == static_cast<std::size_t>(-1)) break;
    }
  }
  audit.ok = audit.sum <= audit.bound;
  return audit;
}

std::vector<Multidegree> monomials_up_to(std::size_t n, std::uint32_t d) {
  std::vector<Multidegree> out;
  for (std::uint32_t w = d + 1; w-- > 0;) {
    auto layer = multidegrees_of_weight(n, w);
    std::reverse(layer.begin(), layer.end());
    for (auto& m : layer) out.push_back(std::move(m));
  }
  return out;
}

bool vanishing_hypothesis_holds(std::size_t n, std::span<const MultiplicityTarget> targets, std::uint32_t d) {
  BigInt conditions = 0;
  for (const auto& t : targets) {
    if (t.multiplicity > 0) conditions += binomial(t.multiplicity + n - 1, n);
  }
  return conditions < binomial(d + n, n);
}

VanishingResult find_vanishing_poly(const Field& field, std::size_t n, std::span<const MultiplicityTarget> targets,
                                    std::uint32_t d) {
  const auto columns = monomials_up_to(n, d);
  std::vector<Point> rows;
  for (const auto& target : targets) {
    require(target.point.size() == n, Errc::DimensionMismatch, "target point has the wrong length");
    for (std::uint32_t w = 0; w < target.multiplicity; ++w) {
      for (const auto& i : multidegrees_of_weight(n, w)) {
        Point row(columns.size(), Field::zero());
        for (std::size_t c = 0; c < columns.size(); ++c) {
          const FieldElement f = hasse_factor(field, columns[c], i);
          if (f == Field::zero()) continue;
          FieldElement v = f;
          for (std::size_t j = 0; j < n; ++j) {
            const auto e = columns[c][j] - i[j];
            if (e != 0) v = field.mul(v, field.pow(target.point[j], e));
          }
          row[c] = v;
        }
        rows.push_back(std::move(row));
      }
    }
  }

  const bool hypothesis = vanishing_hypothesis_holds(n, targets, d);
  const RrefResult r = rref(field, Matrix::from_rows(rows, columns.size()));
  if (r.rank == columns.size()) {
    return NoSolutionCertificate{columns.size(), rows.size(), r.rank, hypothesis};
  }
  std::vector<bool> is_pivot(columns.size(), false);
  for (auto p : r.pivots) is_pivot[p] = true;
  std::size_t first_free = 0;
  while (is_pivot[first_free]) ++first_free;

  Polynomial out(field, n);
  out.add_term(columns[first_free], Field::one());
  for (std::size_t i = 0; i < r.rank; ++i) {
    out.add_term(columns[r.pivots[i]], field.neg(r.matrix.at(i, first_free)));
  }
  return out;
}

}  // namespace flab

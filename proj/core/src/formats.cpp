#include "flab/formats.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "flab/error.hpp"

namespace flab {

namespace {

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

std::vector<std::string> tokens(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string t; in >> t;) out.push_back(t);
  return out;
}

class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  std::optional<std::string> next() {
    for (std::string line; std::getline(is_, line);) {
      ++number_;
      std::string t = trim(line);
      if (t.empty() || t.front() == '#') continue;
      return t;
    }
    return std::nullopt;
  }

  [[noreturn]] void fail(const std::string& what) const {
    raise(Errc::ParseError, "line " + std::to_string(number_) + ": " + what);
  }

  std::uint64_t number(const std::string& token) const {
    std::uint64_t v = 0;
    const auto* end = token.data() + token.size();
    const auto [ptr, ec] = std::from_chars(token.data(), end, v);
    if (ec != std::errc{} || ptr != end) fail("expected a nonnegative integer, got '" + token + "'");
    return v;
  }

 private:
  std::istream& is_;
  std::size_t number_ = 0;
};

struct Header {
  Field field;
  std::size_t n;
};

Header read_header(LineReader& in) {
  const auto line = in.next();
  if (!line) in.fail("missing `p e n` header");
  const auto t = tokens(*line);
  if (t.size() != 3) in.fail("header must be `p e n`");
  FieldSpec spec;
  spec.p = static_cast<std::uint32_t>(in.number(t[0]));
  spec.e = static_cast<std::uint32_t>(in.number(t[1]));
  const std::size_t n = in.number(t[2]);
  if (spec.e == 0) in.fail("extension degree must be positive");
  BigInt q = pow_int(spec.p, spec.e);
  if (q > kMaxFieldOrder) in.fail("q = p^e exceeds 2^16");
  spec.q = q.convert_to<std::uint32_t>();
  if (spec.e > 1) {
    const auto mod = in.next();
    if (!mod) in.fail("missing modulus line");
    for (const auto& c : tokens(*mod)) spec.modulus.push_back(static_cast<std::uint32_t>(in.number(c)));
    if (spec.modulus.size() != spec.e + 1) in.fail("modulus needs e + 1 coefficients");
  }
  try {
    return Header{Field(spec), n};
  } catch (const Error& e) {
    in.fail(e.what());
  }
}

void write_header(std::ostream& os, const Field& field, std::size_t n) {
  const auto& spec = field.spec();
  os << spec.p << ' ' << spec.e << ' ' << n << '\n';
  if (spec.e > 1) {
    for (std::size_t i = 0; i < spec.modulus.size(); ++i) os << (i ? " " : "") << spec.modulus[i];
    os << '\n';
  }
}

FieldElement parse_element(LineReader& in, const Field& field, const std::string& text) {
  const auto t = tokens(text);
  if (t.size() != field.degree()) in.fail("element '" + text + "' needs " + std::to_string(field.degree()) + " digits");
  std::vector<std::uint32_t> digits;
  for (const auto& d : t) {
    const auto v = in.number(d);
    if (v >= field.characteristic()) in.fail("digit " + d + " is not below p");
    digits.push_back(static_cast<std::uint32_t>(v));
  }
  return field.from_coefficients(digits);
}

Point parse_point(LineReader& in, const Field& field, std::size_t n, const std::string& text) {
  const auto coords = split(text, '|');
  if (coords.size() != n) in.fail("point '" + text + "' needs " + std::to_string(n) + " coordinates");
  Point p;
  for (const auto& c : coords) p.push_back(parse_element(in, field, c));
  return p;
}

Flat parse_flat(LineReader& in, const Field& field, std::size_t n, const std::string& rows_text,
                const std::string& shift_text) {
  std::vector<Point> rows;
  if (!rows_text.empty()) {
    for (const auto& r : split(rows_text, '/')) rows.push_back(parse_point(in, field, n, r));
  }
  Subspace dir = Subspace::span_of(field, n, rows);
  if (dir.rank() != rows.size()) in.fail("flat direction rows are linearly dependent");
  return make_flat(field, std::move(dir), parse_point(in, field, n, shift_text));
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  require(in.good(), Errc::ParseError, "cannot open '" + path + "'");
  return in;
}

}  // namespace

Rational parse_rational(const std::string& text) {
  const std::string t = trim(text);
  const auto valid_int = [](const std::string& s) {
    std::size_t i = (!s.empty() && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i >= s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const auto slash = t.find('/');
  const std::string num = trim(t.substr(0, slash));
  const std::string den = slash == std::string::npos ? "1" : trim(t.substr(slash + 1));
  require(valid_int(num) && valid_int(den), Errc::ParseError, "'" + text + "' is not a rational number");
  const BigInt d(den[0] == '+' ? den.substr(1) : den);
  require(d != 0, Errc::ParseError, "'" + text + "' has a zero denominator");
  return Rational(BigInt(num[0] == '+' ? num.substr(1) : num), d);
}

std::string format_element(const Field& field, FieldElement x) {
  std::string out;
  const auto digits = field.coefficients(x);
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(digits[i]);
  }
  return out;
}

std::string format_point(const Field& field, std::span<const FieldElement> point) {
  std::string out;
  for (std::size_t i = 0; i < point.size(); ++i) {
    if (i) out += '|';
    out += format_element(field, point[i]);
  }
  return out;
}

std::string format_flat(const Field& field, const Flat& flat) {
  std::string out;
  for (std::size_t r = 0; r < flat.direction.rank(); ++r) {
    if (r) out += " / ";
    out += format_point(field, flat.direction.basis().row(r));
  }
  out += out.empty() ? "; " : " ; ";
  out += format_point(field, flat.shift);
  return out;
}

void write_point_set(std::ostream& os, const PointSet& s) {
  write_header(os, s.field(), s.dim());
  for (const auto& p : s.points()) os << format_point(s.field(), p) << '\n';
}

PointSet read_point_set(std::istream& is) {
  LineReader in(is);
  const Header h = read_header(in);
  PointSet s{AffineSpace(h.field, h.n)};
  while (auto line = in.next()) s.insert(parse_point(in, h.field, h.n, *line));
  return s;
}

void write_distribution(std::ostream& os, const RationalDistribution& dist) {
  write_header(os, dist.field(), dist.dim());
  for (const auto& [idx, w] : dist.weights()) {
    os << format_point(dist.field(), dist.space().point(idx)) << ' ' << w << '\n';
  }
}

RationalDistribution read_distribution(std::istream& is) {
  LineReader in(is);
  const Header h = read_header(in);
  RationalDistribution dist{AffineSpace(h.field, h.n)};
  while (auto line = in.next()) {
    const auto cut = line->find_last_of(" \t");
    if (cut == std::string::npos) in.fail("expected a point followed by a weight");
    const auto weight = in.number(line->substr(cut + 1));
    if (weight == 0) in.fail("weights must be positive");
    dist.add(parse_point(in, h.field, h.n, line->substr(0, cut)), weight);
  }
  return dist;
}

void write_flat_family(std::ostream& os, const FlatFamily& family) {
  const Field& field = family.space().field();
  write_header(os, field, family.space().dim());
  for (const auto& f : family.flats()) os << format_flat(field, f) << '\n';
}

FlatFamily read_flat_family(std::istream& is) {
  LineReader in(is);
  const Header h = read_header(in);
  std::vector<Flat> flats;
  while (auto line = in.next()) {
    const auto parts = split(*line, ';');
    if (parts.size() != 2) in.fail("flat must be `rows ; shift`");
    flats.push_back(parse_flat(in, h.field, h.n, parts[0], parts[1]));
    if (flats.back().rank() != flats.front().rank()) in.fail("flats of different ranks in one family");
  }
  return FlatFamily::of(AffineSpace(h.field, h.n), std::move(flats));
}

void write_witness(std::ostream& os, const AffineSpace& space, const WitnessFamily& witness) {
  write_header(os, space.field(), space.dim());
  for (const auto& entry : witness) os << format_flat(space.field(), entry.flat) << " ; " << entry.count << '\n';
}

WitnessFamily read_witness(std::istream& is) {
  LineReader in(is);
  const Header h = read_header(in);
  WitnessFamily witness;
  while (auto line = in.next()) {
    const auto parts = split(*line, ';');
    if (parts.size() != 3) in.fail("witness entry must be `rows ; shift ; count`");
    Flat flat = parse_flat(in, h.field, h.n, parts[0], parts[1]);
    Subspace dir = flat.direction;
    witness.push_back(WitnessEntry{std::move(dir), std::move(flat), in.number(parts[2])});
  }
  return witness;
}

void write_polynomial(std::ostream& os, const Polynomial& p) {
  write_header(os, p.field(), p.num_vars());
  for (const auto& [exps, c] : p.terms()) {
    os << format_element(p.field(), c) << " :";
    for (auto e : exps) os << ' ' << e;
    os << '\n';
  }
}

Polynomial read_polynomial(std::istream& is) {
  LineReader in(is);
  const Header h = read_header(in);
  Polynomial p(h.field, h.n);
  while (auto line = in.next()) {
    const auto parts = split(*line, ':');
    if (parts.size() != 2) in.fail("term must be `coeff : e1 ... en`");
    const auto exps = tokens(parts[1]);
    if (exps.size() != h.n) in.fail("term needs " + std::to_string(h.n) + " exponents");
    Multidegree md;
    for (const auto& e : exps) md.push_back(static_cast<std::uint32_t>(in.number(e)));
    p.add_term(md, parse_element(in, h.field, parts[0]));
  }
  return p;
}

PointSet load_point_set(const std::string& path) {
  auto in = open(path);
  return read_point_set(in);
}

RationalDistribution load_distribution(const std::string& path) {
  auto in = open(path);
  return read_distribution(in);
}

FlatFamily load_flat_family(const std::string& path) {
  auto in = open(path);
  return read_flat_family(in);
}

Polynomial load_polynomial(const std::string& path) {
  auto in = open(path);
  return read_polynomial(in);
}

}  // namespace flab

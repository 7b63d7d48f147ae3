#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "flab/error.hpp"
#include "flab/formats.hpp"
#include "flab_cli.hpp"

namespace flab::cli {

std::uint64_t default_budget() {
  if (const char* env = std::getenv("FLAB_BUDGET"); env != nullptr && *env != '\0') {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used);
      if (used == std::string(env).size()) return v;
    } catch (const std::exception&) {
    }
    raise(Errc::BadRange, std::string("FLAB_BUDGET='") + env + "' is not a nonnegative integer");
  }
  return Budget{}.max_objects;
}

namespace {

struct Common {
  std::string format = "text";
  std::string output;
  std::uint64_t budget = 0;
  unsigned threads = 1;
};

struct Params {
  std::uint64_t q = 0;
  std::size_t n = 0;
  std::size_t k = 0;
  std::uint64_t m = 0;
  std::string epsilon;
  std::string points;
  std::string dist;
  std::string flats;
  std::string poly;
  std::string witness_out;
  std::string lemma = "haemers";
  std::string delta;
  std::size_t l = 0;
  std::string r;
  bool recursion = false;
  bool norm = false;
  std::uint32_t mult = 0;
  std::uint32_t degree = 0;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--format", c.format, "json, csv or text")->capture_default_str();
  cmd->add_option("--output", c.output, "write the report to this file instead of stdout");
  cmd->add_option("--budget", c.budget, "cap on enumerated objects (default 1e7 or FLAB_BUDGET)");
  cmd->add_option("--threads", c.threads, "worker threads")->capture_default_str()->check(CLI::Range(1u, 1024u));
}

void add_instance(CLI::App* cmd, Params& p) {
  cmd->add_option("--q", p.q, "field order")->required();
  cmd->add_option("--n", p.n, "ambient dimension")->required();
  cmd->add_option("--k", p.k, "flat rank")->required();
  cmd->add_option("--m", p.m, "points required per direction")->required();
}

std::string run_verify(const Params& p, const Common& c, Format f) {
  const PointSet s = load_point_set(p.points);
  const Budget budget{c.budget};
  const FurstenbergVerdict v = is_furstenberg(s, p.k, p.m, budget, c.threads);
  if (!p.witness_out.empty() && v.ok) {
    std::ofstream w(p.witness_out);
    require(w.good(), Errc::ParseError, "cannot write '" + p.witness_out + "'");
    write_witness(w, s.space(), v.witness);
  }
  return emit_verdict(v, s, p.k, p.m, f);
}

std::string run_search(const Params& p, const Common& c, Format f) {
  const FurstenbergInstance inst(Field::of_order(p.q), p.n, p.k, p.m);
  return emit_extremal(search_extremal(inst, Budget{c.budget}, c.threads), inst, f);
}

std::string run_bounds(const Params& p, Format f) {
  const FurstenbergInstance inst(Field::of_order(p.q), p.n, p.k, p.m);
  std::optional<Rational> eps;
  if (!p.epsilon.empty()) eps = parse_rational(p.epsilon);
  return emit_bound_report(bound_table(inst, eps), f);
}

std::string run_entropy(const Params& p, const Common& c, Format f) {
  require(p.dist.empty() != p.points.empty(), Errc::BadRange, "give exactly one of --dist and --points");
  const RationalDistribution dist =
      p.dist.empty() ? RationalDistribution::uniform(load_point_set(p.points)) : load_distribution(p.dist);
  const Budget budget{c.budget};
  if (p.norm) {
    const IntegerFunction fn = IntegerFunction::from_distribution(dist);
    BigInt r;
    if (p.r.empty()) {
      r = heavy_line_level(fn, budget);
    } else {
      const Rational given = parse_rational(p.r);
      require(denominator(given) == 1 && given >= 0, Errc::BadRange, "--r must be a nonnegative integer");
      r = numerator(given);
    }
    return emit_norm_bound(norm_bound_check(fn, r, budget), r, f);
  }
  if (p.k == 0) return emit_entropy_value(min_entropy(dist), f);
  const EntropicBoundReport report = check_entropic_bound(dist, p.k, budget, c.threads);
  std::optional<RecursionReport> rec;
  if (p.recursion) rec = check_recursion(dist, p.k, budget, c.threads);
  return emit_entropic_bound(dist, p.k, report, rec ? &*rec : nullptr, f);
}

std::string run_polycert(const Params& p, const Common& c, Format f) {
  if (p.poly.empty()) {
    // Interpolation: a polynomial of degree <= d vanishing to order N on S.
    require(!p.points.empty() && p.mult > 0, Errc::BadRange, "interpolation needs --points, --mult and --degree");
    const PointSet s = load_point_set(p.points);
    std::vector<MultiplicityTarget> targets;
    for (const auto& pt : s.points()) targets.push_back(MultiplicityTarget{pt, p.mult});
    const VanishingResult result = find_vanishing_poly(s.field(), s.dim(), targets, p.degree);
    if (const auto* cert = std::get_if<NoSolutionCertificate>(&result)) {
      std::ostringstream os;
      if (f == Format::Json) {
        os << "{\n  \"solution\": false,\n  \"unknowns\": " << cert->unknowns << ",\n  \"equations\": "
           << cert->equations << ",\n  \"rank\": " << cert->rank
           << ",\n  \"hypothesis_held\": " << (cert->hypothesis_held ? "true" : "false") << "\n}\n";
      } else {
        os << "no nonzero solution: unknowns " << cert->unknowns << ", equations " << cert->equations << ", rank "
           << cert->rank << ", counting hypothesis " << (cert->hypothesis_held ? "held" : "failed") << "\n";
      }
      return os.str();
    }
    const auto& poly = std::get<Polynomial>(result);
    if (f == Format::Text) {
      std::ostringstream os;
      write_polynomial(os, poly);
      return os.str();
    }
    std::vector<MultiplicityLine> mults;
    for (const auto& pt : s.points()) mults.push_back({pt, multiplicity(poly, pt)});
    std::vector<FieldElement> all(s.field().order());
    for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = s.field().element(i);
    return emit_polycert(poly, mults, sz_mult_audit(poly, all), f);
  }
  const Polynomial poly = load_polynomial(p.poly);
  const AffineSpace space(poly.field(), poly.num_vars());
  const PointSet s = p.points.empty() ? PointSet::whole(space) : load_point_set(p.points);
  require(s.space() == space, Errc::DimensionMismatch, "points and polynomial live in different spaces");
  Budget{c.budget}.check(s.size(), "evaluation points");
  std::vector<MultiplicityLine> mults;
  for (const auto& pt : s.points()) mults.push_back({pt, multiplicity(poly, pt)});
  std::vector<FieldElement> all(poly.field().order());
  for (std::uint32_t i = 0; i < all.size(); ++i) all[i] = poly.field().element(i);
  return emit_polycert(poly, mults, sz_mult_audit(poly, all), f);
}

const std::string& need(const std::string& path, const char* flag) {
  require(!path.empty(), Errc::BadRange, std::string("missing ") + flag);
  return path;
}

std::string run_incidence(const Params& p, const Common& c, Format f) {
  const Budget budget{c.budget};
  std::optional<Rational> delta;
  if (!p.delta.empty()) delta = parse_rational(p.delta);
  if (p.lemma == "haemers" || p.lemma == "count") {
    const PointSet s = load_point_set(need(p.points, "--points"));
    // Without --flats, audit against every l-flat of the ambient space.
    const FlatFamily l = p.flats.empty()
                             ? FlatFamily::of(s.space(), enumerate_flats(s.field(), s.dim(), p.l, budget))
                             : load_flat_family(p.flats);
    if (p.lemma == "haemers") return emit_incidence(haemers_check(s, l, c.threads), s.field(), f);
    IncidenceReport report;
    report.lemma = "count";
    report.incidences = count_incidences(s, l, c.threads);
    report.lhs = report.rhs = Rational(report.incidences);
    report.ok = true;
    return emit_incidence(report, s.field(), f);
  }
  if (p.lemma == "poor") {
    require(delta.has_value(), Errc::BadDelta, "poor-flat census needs --delta");
    const PointSet s = load_point_set(need(p.points, "--points"));
    return emit_incidence(poor_flat_census(s, p.l, *delta, budget, c.threads), s.field(), f);
  }
  if (p.lemma == "subflats") {
    const FlatFamily fam = load_flat_family(need(p.flats, "--flats"));
    return emit_incidence(contained_subflats(fam, p.l, budget, c.threads), fam.space().field(), f);
  }
  if (p.lemma == "rich") {
    require(delta.has_value(), Errc::BadDelta, "rich-flat census needs --delta");
    const PointSet s = load_point_set(need(p.points, "--points"));
    return emit_incidence(kakeya_becks_census(s, p.k, p.m, *delta, budget, c.threads), s.field(), f);
  }
  raise(Errc::BadRange, "unknown --lemma '" + p.lemma + "' (haemers, count, poor, subflats, rich)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact computations for Furstenberg sets over finite fields", "flab"};
  app.require_subcommand(1);
  Common common;
  Params p;

  auto* verify = app.add_subcommand("verify", "check the (k,m)-Furstenberg property and print a witness");
  verify->add_option("--points", p.points, "point set file")->required();
  verify->add_option("--k", p.k, "flat rank")->required();
  verify->add_option("--m", p.m, "points required per direction")->required();
  verify->add_option("--witness-out", p.witness_out, "also write the witness family to this file");

  auto* search = app.add_subcommand("search", "compute or bound K(q,n,k,m)");
  add_instance(search, p);

  auto* bounds = app.add_subcommand("bounds", "evaluate the known bounds on K(q,n,k,m)");
  add_instance(bounds, p);
  bounds->add_option("--epsilon", p.epsilon, "epsilon for the large-m bound, as num/den");

  auto* entropy = app.add_subcommand("entropy", "min-entropy, projection and norm bounds of a distribution");
  entropy->add_option("--dist", p.dist, "distribution file");
  entropy->add_option("--points", p.points, "point set file (uniform distribution)");
  entropy->add_option("--k", p.k, "kernel rank of the projection");
  entropy->add_flag("--recursion", p.recursion, "also compare the greedy one-step chain");
  entropy->add_flag("--norm", p.norm, "check the l^n norm bound on the weights");
  entropy->add_option("--r", p.r, "line-weight level for --norm (default: the largest valid)");

  auto* polycert = app.add_subcommand("polycert", "multiplicity certificates and vanishing polynomials");
  polycert->add_option("--poly", p.poly, "polynomial file");
  polycert->add_option("--points", p.points, "points to certify, or interpolation nodes");
  polycert->add_option("--mult", p.mult, "interpolation: required multiplicity");
  polycert->add_option("--degree", p.degree, "interpolation: maximal degree");

  auto* incidence = app.add_subcommand("incidence", "incidence counts and lemma audits");
  incidence->add_option("--lemma", p.lemma, "haemers, count, poor, subflats or rich")->capture_default_str();
  incidence->add_option("--points", p.points, "point set file");
  incidence->add_option("--flats", p.flats, "flat family file (haemers and count default to every --l flat)");
  incidence->add_option("--l", p.l, "rank of the counted flats");
  incidence->add_option("--delta", p.delta, "threshold parameter, as num/den");
  incidence->add_option("--k", p.k, "Furstenberg rank (rich)");
  incidence->add_option("--m", p.m, "Furstenberg multiplicity (rich)");

  auto* selftest = app.add_subcommand("selftest", "run the built-in invariant suite");

  for (auto* cmd : {verify, search, bounds, entropy, polycert, incidence, selftest}) add_common(cmd, common);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    if (common.budget == 0) common.budget = default_budget();
    const Format format = parse_format(common.format);
    std::string report;
    bool success = true;
    if (verify->parsed()) {
      report = run_verify(p, common, format);
    } else if (search->parsed()) {
      report = run_search(p, common, format);
    } else if (bounds->parsed()) {
      report = run_bounds(p, format);
    } else if (entropy->parsed()) {
      report = run_entropy(p, common, format);
    } else if (polycert->parsed()) {
      report = run_polycert(p, common, format);
    } else if (incidence->parsed()) {
      report = run_incidence(p, common, format);
    } else {
      const auto cases = run_selftest();
      success = std::all_of(cases.begin(), cases.end(), [](const SelftestCase& c) { return c.ok; });
      report = emit_selftest(cases, format);
    }
    if (common.output.empty()) {
      out << report;
    } else {
      std::ofstream file(common.output, std::ios::binary);
      require(file.good(), Errc::ParseError, "cannot write '" + common.output + "'");
      file << report;
    }
    return success ? 0 : 1;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace flab::cli

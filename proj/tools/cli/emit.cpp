#include <sstream>

#include <nlohmann/json.hpp>

#include "flab/error.hpp"
#include "flab/formats.hpp"
#include "flab_cli.hpp"

namespace flab::cli {

using Json = nlohmann::ordered_json;

namespace {

std::string str(const BigInt& v) { return v.str(); }

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

// Two-column key,value CSV for scalar reports.
std::string kv_csv(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::string out = "key,value\n";
  for (const auto& [k, v] : rows) out += csv_field(k) + "," + csv_field(v) + "\n";
  return out;
}

std::string kv_text(const std::vector<std::pair<std::string, std::string>>& rows) {
  std::size_t width = 0;
  for (const auto& row : rows) width = std::max(width, row.first.size());
  std::string out;
  for (const auto& [k, v] : rows) out += k + std::string(width - k.size() + 2, ' ') + v + "\n";
  return out;
}

const char* yes(bool b) { return b ? "true" : "false"; }

std::string entropy_text(const EntropyValue& h) {
  return "H = log_q(" + str(h.total) + "/" + str(h.max_weight) + ")";
}

Json entropy_json(const EntropyValue& h) {
  return Json{{"max_weight", str(h.max_weight)}, {"total", str(h.total)}, {"text", entropy_text(h)}};
}

}  // namespace

Format parse_format(const std::string& name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  raise(Errc::UnsupportedFormat, "format '" + name + "' is not one of json, csv, text");
}

std::string bound_text(const BoundValue& v) {
  std::string out = to_fraction_string(v.value);
  if (v.root > 1) out = "(" + out + ")^(1/" + std::to_string(v.root) + ")";
  if (v.radicand != 0) out += " - sqrt(" + to_fraction_string(v.radicand) + ")";
  return out;
}

std::string emit_bound_report(const BoundReport& report, Format format) {
  const auto& inst = report.instance;
  switch (format) {
    case Format::Json: {
      Json rows = Json::array();
      for (const auto& row : report.rows) {
        rows.push_back(Json{{"source", row.source},
                            {"rhs_numerator", str(boost::multiprecision::numerator(row.rhs.value))},
                            {"rhs_denominator", str(boost::multiprecision::denominator(row.rhs.value))},
                            {"exponent_note", row.exponent_note},
                            {"applicable", row.applicable},
                            {"kind", row.kind == BoundKind::Lower ? "lower" : "upper"},
                            {"root", row.rhs.root},
                            {"radicand", to_fraction_string(row.rhs.radicand)},
                            {"approx", row.rhs.approx()}});
      }
      return dump(Json{{"q", inst.q()},
                       {"n", inst.n()},
                       {"k", inst.k()},
                       {"m", inst.m()},
                       {"best_lower", str(report.best_lower())},
                       {"best_upper", str(report.best_upper())},
                       {"rows", rows}});
    }
    case Format::Csv: {
      std::string out = "source,rhs,applicable\n";
      for (const auto& row : report.rows) {
        out += row.source + "," + csv_field(bound_text(row.rhs)) + "," + yes(row.applicable) + "\n";
      }
      return out;
    }
    case Format::Text: {
      std::ostringstream os;
      os << "K(" << inst.q() << "," << inst.n() << "," << inst.k() << "," << inst.m() << ")\n";
      for (const auto& row : report.rows) {
        os << "  " << row.source << (row.kind == BoundKind::Lower ? "  >= " : "  <= ") << bound_text(row.rhs)
           << "  [" << row.exponent_note << "]" << (row.applicable ? "" : "  (not applicable)") << "\n";
      }
      os << "  best lower " << report.best_lower() << ", best upper " << report.best_upper() << "\n";
      return os.str();
    }
  }
  return {};
}

std::string emit_verdict(const FurstenbergVerdict& verdict, const PointSet& s, std::size_t k, std::uint64_t m,
                         Format format) {
  const Field& field = s.field();
  switch (format) {
    case Format::Json: {
      Json j{{"furstenberg", verdict.ok}, {"size", s.size()}, {"k", k}, {"m", m}};
      if (verdict.ok) {
        Json w = Json::array();
        for (const auto& e : verdict.witness) {
          w.push_back(Json{{"direction", format_flat(field, Flat{e.direction, Point(s.dim(), Field::zero())})},
                           {"flat", format_flat(field, e.flat)},
                           {"count", e.count}});
        }
        j["witness"] = w;
      } else {
        j["failing_direction"] = format_flat(field, Flat{*verdict.failing, Point(s.dim(), Field::zero())});
      }
      return dump(j);
    }
    case Format::Csv: {
      if (!verdict.ok) {
        return kv_csv({{"furstenberg", "false"},
                       {"failing_direction", format_flat(field, Flat{*verdict.failing, Point(s.dim(), Field::zero())})}});
      }
      std::string out = "flat,count\n";
      for (const auto& e : verdict.witness) out += csv_field(format_flat(field, e.flat)) + "," + std::to_string(e.count) + "\n";
      return out;
    }
    case Format::Text: {
      std::ostringstream os;
      os << "(" << k << "," << m << ")-Furstenberg: " << yes(verdict.ok) << " (|S| = " << s.size() << ")\n";
      if (verdict.ok) {
        write_witness(os, s.space(), verdict.witness);
      } else {
        os << "no " << m << "-rich translate of " << format_flat(field, Flat{*verdict.failing, Point(s.dim(), Field::zero())})
           << "\n";
      }
      return os.str();
    }
  }
  return {};
}

std::string emit_extremal(const ExtremalResult& result, const FurstenbergInstance& inst, Format format) {
  std::vector<std::pair<std::string, std::string>> rows{
      {"q", std::to_string(inst.q())}, {"n", std::to_string(inst.n())},
      {"k", std::to_string(inst.k())}, {"m", std::to_string(inst.m())},
      {"exact", yes(result.exact)},    {"lower", str(result.lower)},
      {"upper", str(result.upper)},    {"nodes", std::to_string(result.nodes)}};
  switch (format) {
    case Format::Json: {
      Json j;
      for (const auto& [k, v] : rows) j[k] = v;
      j["exact"] = result.exact;
      j["nodes"] = result.nodes;
      if (result.example) {
        Json pts = Json::array();
        for (const auto& p : result.example->points()) pts.push_back(format_point(inst.field(), p));
        j["example"] = pts;
      }
      return dump(j);
    }
    case Format::Csv:
      return kv_csv(rows);
    case Format::Text: {
      std::ostringstream os;
      os << kv_text(rows);
      if (result.example) {
        os << "example:\n";
        write_point_set(os, *result.example);
      }
      return os.str();
    }
  }
  return {};
}

std::string emit_entropy_value(const EntropyValue& h, Format format) {
  switch (format) {
    case Format::Json:
      return dump(entropy_json(h));
    case Format::Csv:
      return kv_csv({{"max_weight", str(h.max_weight)}, {"total", str(h.total)}});
    case Format::Text:
      return entropy_text(h) + "  (max_weight " + str(h.max_weight) + ", total " + str(h.total) + ")\n";
  }
  return {};
}

std::string emit_entropic_bound(const RationalDistribution& dist, std::size_t k, const EntropicBoundReport& report,
                                const RecursionReport* recursion, Format format) {
  const Field& field = dist.field();
  const EntropyValue h = min_entropy(dist);
  std::vector<std::pair<std::string, std::string>> rows{
      {"entropy", entropy_text(h)},
      {"k", std::to_string(k)},
      {"best_projection", entropy_text(report.witness.attained)},
      {"heaviest_image", format_point(field, report.witness.shift_value)},
      {"lhs", str(report.lhs)},
      {"rhs", str(report.rhs)},
      {"margin", str(report.margin)},
      {"ok", yes(report.ok)}};
  if (recursion != nullptr) {
    rows.emplace_back("recursive_composed", entropy_text(recursion->composed));
    rows.emplace_back("recursive_direct", entropy_text(recursion->direct));
    rows.emplace_back("recursive_composed_ok", yes(recursion->composed_ok));
    rows.emplace_back("composed_not_above_direct", yes(recursion->composed_not_above_direct));
  }
  switch (format) {
    case Format::Json: {
      Json j{{"entropy", entropy_json(h)},
             {"k", k},
             {"best_projection", entropy_json(report.witness.attained)},
             {"heaviest_image", format_point(field, report.witness.shift_value)},
             {"kernel", format_flat(field, Flat{report.witness.map.kernel(), Point(dist.dim(), Field::zero())})},
             {"lhs", str(report.lhs)},
             {"rhs", str(report.rhs)},
             {"margin", str(report.margin)},
             {"ok", report.ok}};
      if (recursion != nullptr) {
        Json stages = Json::array();
        for (const auto& s : recursion->stages) stages.push_back(entropy_json(s));
        j["recursion"] = Json{{"stages", stages},
                              {"composed", entropy_json(recursion->composed)},
                              {"direct", entropy_json(recursion->direct)},
                              {"composed_ok", recursion->composed_ok},
                              {"direct_ok", recursion->direct_ok},
                              {"composed_not_above_direct", recursion->composed_not_above_direct}};
      }
      return dump(j);
    }
    case Format::Csv:
      return kv_csv(rows);
    case Format::Text:
      return kv_text(rows);
  }
  return {};
}

std::string emit_norm_bound(const NormBoundReport& report, const BigInt& r, Format format) {
  std::vector<std::pair<std::string, std::string>> rows{{"r", str(r)},
                                                        {"hypothesis_ok", yes(report.hypothesis_ok)},
                                                        {"sum", str(report.sum)},
                                                        {"bound_numerator", str(report.bound_num)},
                                                        {"bound_denominator", str(report.bound_den)},
                                                        {"ok", yes(report.ok)}};
  if (format == Format::Json) {
    Json j;
    for (const auto& [k, v] : rows) j[k] = v;
    j["hypothesis_ok"] = report.hypothesis_ok;
    j["ok"] = report.ok;
    return dump(j);
  }
  return format == Format::Csv ? kv_csv(rows) : kv_text(rows);
}

std::string emit_incidence(const IncidenceReport& report, const Field& field, Format format) {
  switch (format) {
    case Format::Json: {
      Json j{{"lemma", report.lemma},
             {"incidences", str(report.incidences)},
             {"lhs", to_fraction_string(report.lhs)},
             {"rhs", to_fraction_string(report.rhs)},
             {"radicand", to_fraction_string(report.radicand)},
             {"hypothesis_met", report.hypothesis_met},
             {"ok", report.ok}};
      if (report.lemma == "contained_subflats") {
        j["k_factor"] = str(report.k_factor);
        j["k_factor_exact"] = report.k_factor_exact;
      }
      if (!report.census.empty()) {
        Json census = Json::array();
        for (const auto& c : report.census) {
          census.push_back(Json{{"flat", format_flat(field, c.flat)}, {"points", c.points}, {"flagged", c.flagged}});
        }
        j["census"] = census;
      }
      return dump(j);
    }
    case Format::Csv: {
      if (report.census.empty()) {
        return kv_csv({{"lemma", report.lemma},
                       {"incidences", str(report.incidences)},
                       {"lhs", to_fraction_string(report.lhs)},
                       {"rhs", to_fraction_string(report.rhs)},
                       {"radicand", to_fraction_string(report.radicand)},
                       {"ok", yes(report.ok)}});
      }
      const std::string label = report.lemma == "poor_flats" ? "poor" : "rich";
      std::string out = "flat-id,point-count," + label + "\n";
      for (std::size_t i = 0; i < report.census.size(); ++i) {
        out += std::to_string(i) + "," + std::to_string(report.census[i].points) + "," +
               yes(report.census[i].flagged) + "\n";
      }
      return out;
    }
    case Format::Text: {
      std::vector<std::pair<std::string, std::string>> rows{{"lemma", report.lemma},
                                                            {"incidences", str(report.incidences)},
                                                            {"lhs", to_fraction_string(report.lhs)},
                                                            {"rhs", to_fraction_string(report.rhs)}};
      if (report.radicand != 0) rows.emplace_back("radicand", to_fraction_string(report.radicand));
      if (report.lemma == "contained_subflats") {
        rows.emplace_back("k_factor", str(report.k_factor) + (report.k_factor_exact ? " (exact)" : " (lower bound)"));
      }
      rows.emplace_back("hypothesis_met", yes(report.hypothesis_met));
      rows.emplace_back("ok", yes(report.ok));
      return kv_text(rows);
    }
  }
  return {};
}

std::string emit_polycert(const Polynomial& p, const std::vector<MultiplicityLine>& mults, const SzAudit& audit,
                          Format format) {
  const auto mult_str = [](Multiplicity m) { return m.is_infinite() ? std::string("inf") : std::to_string(m.value()); };
  switch (format) {
    case Format::Json: {
      Json pts = Json::array();
      for (const auto& line : mults) {
        pts.push_back(Json{{"point", format_point(p.field(), line.point)}, {"multiplicity", mult_str(line.value)}});
      }
      Json terms = Json::array();
      for (const auto& [exps, c] : p.terms()) {
        std::string term = format_element(p.field(), c) + " :";
        for (auto e : exps) term += " " + std::to_string(e);
        terms.push_back(term);
      }
      return dump(Json{{"degree", p.degree()},
                       {"terms", terms},
                       {"multiplicities", pts},
                       {"sz_sum", str(audit.sum)},
                       {"sz_bound", str(audit.bound)},
                       {"sz_ok", audit.ok}});
    }
    case Format::Csv: {
      std::string out = "point,multiplicity\n";
      for (const auto& line : mults) {
        out += csv_field(format_point(p.field(), line.point)) + "," + mult_str(line.value) + "\n";
      }
      return out;
    }
    case Format::Text: {
      std::ostringstream os;
      os << "degree " << p.degree() << ", " << p.terms().size() << " terms\n";
      for (const auto& line : mults) os << "  mult at " << format_point(p.field(), line.point) << " = " << mult_str(line.value) << "\n";
      os << "Schwartz-Zippel audit: sum " << audit.sum << " <= " << audit.bound << ": " << yes(audit.ok) << "\n";
      return os.str();
    }
  }
  return {};
}

std::string emit_selftest(const std::vector<SelftestCase>& cases, Format format) {
  bool all = true;
  for (const auto& c : cases) all = all && c.ok;
  switch (format) {
    case Format::Json: {
      Json arr = Json::array();
      for (const auto& c : cases) arr.push_back(Json{{"name", c.name}, {"ok", c.ok}});
      return dump(Json{{"ok", all}, {"cases", arr}});
    }
    case Format::Csv: {
      std::string out = "name,ok\n";
      for (const auto& c : cases) out += c.name + "," + yes(c.ok) + "\n";
      return out;
    }
    case Format::Text: {
      std::string out;
      for (const auto& c : cases) out += std::string(c.ok ? "PASS " : "FAIL ") + c.name + "\n";
      return out + (all ? "all checks passed\n" : "some checks FAILED\n");
    }
  }
  return {};
}

}  // namespace flab::cli

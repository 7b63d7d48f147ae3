#pragma once

// Command-line front end. run() parses arguments, dispatches to the library
// and writes the report; it never throws.
//
// Exit codes: 0 success, 2 invalid arguments or input, 1 internal error.

#include <iosfwd>
#include <string>
#include <vector>

#include "flab/entropy.hpp"
#include "flab/furstenberg.hpp"
#include "flab/incidence.hpp"
#include "flab/polymethod.hpp"

namespace flab::cli {

enum class Format { Json, Csv, Text };

/// Throws UnsupportedFormat.
Format parse_format(const std::string& name);

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Default enumeration budget, honoring FLAB_BUDGET.
std::uint64_t default_budget();

std::string bound_text(const BoundValue& v);

std::string emit_bound_report(const BoundReport& report, Format format);
std::string emit_verdict(const FurstenbergVerdict& verdict, const PointSet& s, std::size_t k, std::uint64_t m,
                         Format format);
std::string emit_extremal(const ExtremalResult& result, const FurstenbergInstance& inst, Format format);
std::string emit_entropy_value(const EntropyValue& h, Format format);
std::string emit_entropic_bound(const RationalDistribution& dist, std::size_t k, const EntropicBoundReport& report,
                                const RecursionReport* recursion, Format format);
std::string emit_norm_bound(const NormBoundReport& report, const BigInt& r, Format format);
std::string emit_incidence(const IncidenceReport& report, const Field& field, Format format);

struct MultiplicityLine {
  Point point;
  Multiplicity value;
};
std::string emit_polycert(const Polynomial& p, const std::vector<MultiplicityLine>& mults, const SzAudit& audit,
                          Format format);

struct SelftestCase {
  std::string name;
  bool ok = false;
};

/// Fast invariant suite over tiny instances.
std::vector<SelftestCase> run_selftest();
std::string emit_selftest(const std::vector<SelftestCase>& cases, Format format);

}  // namespace flab::cli

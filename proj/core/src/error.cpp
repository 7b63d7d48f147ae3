#include "flab/error.hpp"

namespace flab {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::CompositeP: return "CompositeP";
    case Errc::FieldTooLarge: return "FieldTooLarge";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::IncompatibleFields: return "IncompatibleFields";
    case Errc::BadRange: return "BadRange";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::EmptyInput: return "EmptyInput";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::ZeroDirection: return "ZeroDirection";
    case Errc::ZeroPolynomial: return "ZeroPolynomial";
    case Errc::BadEpsilon: return "BadEpsilon";
    case Errc::BadSize: return "BadSize";
    case Errc::BadDelta: return "BadDelta";
    case Errc::NotADirectionFamily: return "NotADirectionFamily";
    case Errc::NotFurstenberg: return "NotFurstenberg";
    case Errc::UnsupportedFormat: return "UnsupportedFormat";
    case Errc::ParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void raise(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace flab

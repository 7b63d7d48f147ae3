#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flab {

enum class Errc {
  CompositeP,
  FieldTooLarge,
  DivisionByZero,
  IncompatibleFields,
  BadRange,
  BudgetExceeded,
  EmptyInput,
  DimensionMismatch,
  ZeroDirection,
  ZeroPolynomial,
  BadEpsilon,
  BadSize,
  BadDelta,
  NotADirectionFamily,
  NotFurstenberg,
  UnsupportedFormat,
  ParseError,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure raised by the library. The code identifies the failed
/// precondition; the message carries the offending values.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void raise(Errc code, const std::string& what);

inline void require(bool condition, Errc code, const std::string& what) {
  if (!condition) raise(code, what);
}

}  // namespace flab

#pragma once

// Exact integer and rational arithmetic shared by every module.

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace flab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt pow_int(const BigInt& base, std::uint64_t exp) {
  BigInt result = 1;
  BigInt b = base;
  while (exp != 0) {
    if (exp & 1U) result *= b;
    exp >>= 1U;
    if (exp != 0) b *= b;
  }
  return result;
}

inline Rational pow_rat(const Rational& base, std::int64_t exp) {
  if (exp < 0) return Rational(1) / pow_rat(base, -exp);
  return Rational(pow_int(boost::multiprecision::numerator(base), static_cast<std::uint64_t>(exp)),
                  pow_int(boost::multiprecision::denominator(base), static_cast<std::uint64_t>(exp)));
}

inline BigInt ceil_div(const BigInt& num, const BigInt& den) {
  BigInt q = num / den;
  if (q * den < num) ++q;
  return q;
}

inline BigInt ceil_rat(const Rational& r) {
  return ceil_div(boost::multiprecision::numerator(r), boost::multiprecision::denominator(r));
}

inline BigInt binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  BigInt result = 1;
  for (std::uint64_t i = 0; i < k; ++i) {
    result *= n - i;
    result /= i + 1;
  }
  return result;
}

/// `num/den` with den omitted when it is 1.
inline std::string to_fraction_string(const Rational& r) {
  const auto& den = boost::multiprecision::denominator(r);
  if (den == 1) return boost::multiprecision::numerator(r).str();
  return boost::multiprecision::numerator(r).str() + "/" + den.str();
}

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Parses "a", "-a", "a/b" into an exact rational.
Rational parse_rational(const std::string& text);

}  // namespace flab

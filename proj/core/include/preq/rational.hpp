#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace preq {

/// Arbitrary-precision rational; every exact engine computes in this type.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Parses "num/den", a signed integer, or a finite decimal such as "0.125".
/// Decimals are converted exactly (0.1 becomes 1/10). Throws ParseError.
Rational parse_rational(std::string_view text);

/// Canonical "num/den" rendering, always with an explicit denominator.
std::string to_string(const Rational& value);

double to_double(const Rational& value);

/// Formats a double with 12 significant digits, the report convention.
std::string format_float(double value);

/// Rounds to 12 significant digits.
double round12(double value);

inline bool in_unit_interval(const Rational& value) {
  return value >= 0 && value <= 1;
}

}  // namespace preq

#include "preq/rational.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <string>

#include "preq/error.hpp"

namespace preq {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

Integer parse_integer(std::string_view s, std::string_view whole) {
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) {
    throw ParseError("malformed rational literal '" + std::string(whole) + "'");
  }
  Integer value{std::string(s)};
  return negative ? Integer(-value) : value;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (s.empty()) throw ParseError("empty rational literal");

  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const Integer num = parse_integer(trim(s.substr(0, slash)), s);
    std::string_view den_text = trim(s.substr(slash + 1));
    if (!all_digits(den_text)) {
      throw ParseError("malformed denominator in '" + std::string(s) + "'");
    }
    const Integer den(std::string{den_text});
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
    return Rational(num, den);
  }

  if (const auto dot = s.find('.'); dot != std::string_view::npos) {
    std::string_view int_part = s.substr(0, dot);
    const std::string_view frac_part = s.substr(dot + 1);
    bool negative = false;
    if (!int_part.empty() && (int_part.front() == '-' || int_part.front() == '+')) {
      negative = int_part.front() == '-';
      int_part.remove_prefix(1);
    }
    if ((int_part.empty() && frac_part.empty()) ||
        (!int_part.empty() && !all_digits(int_part)) ||
        (!frac_part.empty() && !all_digits(frac_part))) {
      throw ParseError("malformed decimal literal '" + std::string(s) + "'");
    }
    const Integer whole = int_part.empty() ? Integer(0) : Integer(std::string(int_part));
    Integer scale = 1;
    for (std::size_t i = 0; i < frac_part.size(); ++i) scale *= 10;
    const Integer frac = frac_part.empty() ? Integer(0) : Integer(std::string(frac_part));
    Rational value(whole * scale + frac, scale);
    return negative ? Rational(-value) : value;
  }

  return Rational(parse_integer(s, s));
}

std::string to_string(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

double to_double(const Rational& value) { return value.convert_to<double>(); }

std::string format_float(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

double round12(double value) {
  if (!std::isfinite(value)) return value;
  return std::stod(format_float(value));
}

}  // namespace preq

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <string>
#include <string_view>

#include "cdst/error.hpp"

namespace cdst {

/// Exact rational number. Every mass, belief and measure value is one of these;
/// rounding only ever happens in the presentation helpers below.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

namespace detail {

inline Integer pow10(unsigned exponent) {
  Integer result = 1;
  for (unsigned i = 0; i < exponent; ++i) result *= 10;
  return result;
}

inline Integer parse_digits(std::string_view digits) {
  Integer value = 0;
  for (char ch : digits) value = value * 10 + (ch - '0');
  return value;
}

inline bool all_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char ch : text) {
    if (!std::isdigit(static_cast<unsigned char>(ch))) return false;
  }
  return true;
}

inline std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

}  // namespace detail

/// Parses `p/q`, an integer, or a decimal such as `0.2`, `-1.25` or `3e-2`,
/// exactly. `0.2` becomes 1/5, never the nearest double.
inline Rational parse_rational(std::string_view input) {
  const std::string_view text = detail::trim(input);
  auto fail = [&]() -> Rational {
    throw ParseError("not a rational number: '" + std::string(input) + "'");
  };
  if (text.empty()) return fail();

  std::string_view body = text;
  bool negative = false;
  if (body.front() == '-' || body.front() == '+') {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }

  Rational value;
  if (const auto slash = body.find('/'); slash != std::string_view::npos) {
    const auto num = body.substr(0, slash);
    const auto den = body.substr(slash + 1);
    if (!detail::all_digits(num) || !detail::all_digits(den)) return fail();
    const Integer d = detail::parse_digits(den);
    if (d == 0) throw ParseError("zero denominator in '" + std::string(input) + "'");
    value = Rational(detail::parse_digits(num), d);
  } else {
    long exponent = 0;
    if (const auto e = body.find_first_of("eE"); e != std::string_view::npos) {
      std::string_view exp_text = body.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '-' || exp_text.front() == '+')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!detail::all_digits(exp_text) || exp_text.size() > 4) return fail();
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      body = body.substr(0, e);
    }
    std::string_view whole = body;
    std::string_view fraction;
    if (const auto dot = body.find('.'); dot != std::string_view::npos) {
      whole = body.substr(0, dot);
      fraction = body.substr(dot + 1);
    }
    if (whole.empty() && fraction.empty()) return fail();
    if ((!whole.empty() && !detail::all_digits(whole)) ||
        (!fraction.empty() && !detail::all_digits(fraction))) {
      return fail();
    }
    std::string digits(whole);
    digits += fraction;
    exponent -= static_cast<long>(fraction.size());
    const Integer mantissa = detail::parse_digits(digits);
    if (exponent >= 0) {
      value = Rational(mantissa * detail::pow10(static_cast<unsigned>(exponent)));
    } else {
      value = Rational(mantissa, detail::pow10(static_cast<unsigned>(-exponent)));
    }
  }
  return negative ? Rational(-value) : value;
}

/// Rounds half away from zero to `digits` decimal places. The result is exact
/// (a multiple of 10^-digits).
inline Rational round_half_away(const Rational& value, unsigned digits) {
  const Integer scale = detail::pow10(digits);
  const Rational scaled = value * scale;
  const Integer num = boost::multiprecision::numerator(scaled);
  const Integer den = boost::multiprecision::denominator(scaled);
  const Integer magnitude = num < 0 ? Integer(-num) : num;
  // floor(|x| + 1/2) == floor((2|num| + den) / (2 den))
  Integer rounded = (2 * magnitude + den) / (2 * den);
  if (num < 0) rounded = -rounded;
  return Rational(rounded, scale);
}

/// Fixed-point rendering after half-away rounding, e.g. 1/19 -> "0.05".
inline std::string to_fixed(const Rational& value, unsigned digits) {
  const Integer scale = detail::pow10(digits);
  const Rational rounded = round_half_away(value, digits);
  Integer units = boost::multiprecision::numerator(Rational(rounded * scale));
  const bool negative = units < 0;
  if (negative) units = -units;
  const Integer whole = units / scale;
  const Integer fraction = units % scale;
  std::string out = negative ? "-" : "";
  out += whole.str();
  if (digits > 0) {
    std::string frac = fraction.str();
    out += '.';
    out += std::string(digits - frac.size(), '0');
    out += frac;
  }
  return out;
}

/// `p/q`, or `p` when the value is an integer.
inline std::string to_exact(const Rational& value) {
  const Integer den = boost::multiprecision::denominator(value);
  if (den == 1) return boost::multiprecision::numerator(value).str();
  return boost::multiprecision::numerator(value).str() + "/" + den.str();
}

inline Rational abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace cdst

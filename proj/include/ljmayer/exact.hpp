#pragma once

// Exact rational arithmetic for turning floating-point inequality claims
// into machine-checked ones. Backed by Boost.Multiprecision's cpp_rational.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace ljmayer::exact {

using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// The exact value of a finite double.
inline Rational from_double(double x) {
  if (!std::isfinite(x)) throw std::domain_error("from_double: non-finite input");
  if (x == 0.0) return Rational(0);
  int exp = 0;
  const double mant = std::frexp(x, &exp);  // x = mant * 2^exp, 0.5 <= |mant| < 1
  const auto m = static_cast<std::int64_t>(std::ldexp(mant, 53));
  exp -= 53;
  Integer num(m);
  Integer den(1);
  if (exp >= 0)
    num <<= exp;
  else
    den <<= -exp;
  return Rational(num, den);
}

/// Parses a plain decimal literal ("0.4275", "-12", "7.89") into the
/// rational it denotes. No exponent notation.
inline Rational parse_decimal(std::string_view s) {
  if (s.empty()) throw std::invalid_argument("parse_decimal: empty string");
  bool neg = false;
  std::size_t i = 0;
  if (s[0] == '-' || s[0] == '+') {
    neg = s[0] == '-';
    i = 1;
  }
  Integer num(0), den(1);
  bool seen_point = false, seen_digit = false;
  for (; i < s.size(); ++i) {
    const char c = s[i];
    if (c == '.') {
      if (seen_point) throw std::invalid_argument("parse_decimal: two decimal points");
      seen_point = true;
    } else if (c >= '0' && c <= '9') {
      num = num * 10 + (c - '0');
      if (seen_point) den *= 10;
      seen_digit = true;
    } else {
      throw std::invalid_argument("parse_decimal: bad character in '" + std::string(s) + "'");
    }
  }
  if (!seen_digit) throw std::invalid_argument("parse_decimal: no digits");
  Rational r(num, den);
  return neg ? Rational(-r) : r;
}

inline Rational pow(const Rational& x, int n) {
  Rational base = n >= 0 ? x : Rational(1) / x;
  unsigned e = static_cast<unsigned>(n >= 0 ? n : -n);
  Rational acc(1);
  while (e) {
    if (e & 1u) acc *= base;
    base *= base;
    e >>= 1;
  }
  return acc;
}

inline int sign(const Rational& x) { return x > 0 ? 1 : (x < 0 ? -1 : 0); }

inline double to_double(const Rational& x) { return static_cast<double>(x); }

/// Lower bound on e^x for rational x >= 0: the Taylor partial sum of the
/// given number of terms (all terms are positive).
inline Rational exp_lower_bound(const Rational& x, int terms = 60) {
  if (x < 0) throw std::domain_error("exp_lower_bound: x must be >= 0");
  Rational term(1), sum(1);
  for (int k = 1; k < terms; ++k) {
    term = term * x / k;
    sum += term;
  }
  return sum;
}

/// Upper bound on e^x for rational 0 <= x < terms: partial sum plus the
/// geometric majorant of the remainder.
inline Rational exp_upper_bound(const Rational& x, int terms = 60) {
  if (x < 0) throw std::domain_error("exp_upper_bound: x must be >= 0");
  if (!(x < terms)) throw std::domain_error("exp_upper_bound: need x < terms");
  Rational term(1), sum(1);
  for (int k = 1; k < terms; ++k) {
    term = term * x / k;
    sum += term;
  }
  const Rational next = term * x / terms;  // x^K / K!
  return sum + next / (Rational(1) - x / (terms + 1));
}

}  // namespace ljmayer::exact

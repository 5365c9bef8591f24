#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace popgen {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

inline BigInt factorial(uint32_t n) {
  BigInt f = 1;
  for (uint32_t i = 2; i <= n; ++i) f *= i;
  return f;
}

inline BigInt binomial(uint32_t n, uint32_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  BigInt b = 1;
  for (uint32_t i = 0; i < k; ++i) {
    b *= (n - i);
    b /= (i + 1);
  }
  return b;
}

inline BigInt int_pow(const BigInt& base, uint32_t e) {
  BigInt r = 1, b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

inline Rational rational_pow(const Rational& base, uint32_t e) {
  Rational r = 1, b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

// Parses "3", "0.25", "2.5e-3", "-1.5", or "7/2" into an exact rational.
inline Rational parse_rational(const std::string& text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a numeric literal: '" + text + "'");
  };
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (den == 0) fail();
    return num / den;
  }
  size_t i = 0, n = text.size();
  while (i < n && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  size_t end = n;
  while (end > i && std::isspace(static_cast<unsigned char>(text[end - 1]))) --end;
  if (i == end) fail();
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = text[i] == '-';
    ++i;
  }
  BigInt digits = 0;
  int64_t frac_len = 0;
  bool any_digit = false, seen_dot = false;
  for (; i < end; ++i) {
    char c = text[i];
    if (c == '.') {
      if (seen_dot) fail();
      seen_dot = true;
    } else if (c >= '0' && c <= '9') {
      digits = digits * 10 + (c - '0');
      if (seen_dot) ++frac_len;
      any_digit = true;
    } else if (c == 'e' || c == 'E') {
      break;
    } else {
      fail();
    }
  }
  if (!any_digit) fail();
  int64_t exp10 = 0;
  if (i < end) {  // exponent part
    ++i;          // skip e/E
    bool eneg = false;
    if (i < end && (text[i] == '+' || text[i] == '-')) {
      eneg = text[i] == '-';
      ++i;
    }
    if (i == end) fail();
    for (; i < end; ++i) {
      char c = text[i];
      if (c < '0' || c > '9') fail();
      exp10 = exp10 * 10 + (c - '0');
      if (exp10 > 100000) fail();
    }
    if (eneg) exp10 = -exp10;
  }
  BigInt num = digits, den = 1;
  int64_t shift = exp10 - frac_len;
  if (shift >= 0)
    num *= int_pow(10, static_cast<uint32_t>(shift));
  else
    den = int_pow(10, static_cast<uint32_t>(-shift));
  Rational r(num, den);
  return neg ? -r : r;
}

// Scaled mutation rate. Parsed input is kept as an exact rational so that
// small-sample quantities can be computed without rounding; `value` is the
// double view used by simulators and quadrature.
struct Theta {
  Rational exact;
  double value;

  explicit Theta(const Rational& r) : exact(r), value(to_double(r)) {
    if (!(exact > 0)) throw std::domain_error("theta must be positive");
  }
  static Theta parse(const std::string& text) { return Theta(parse_rational(text)); }
  static Theta from_double(double v) { return Theta(Rational(v)); }
};

}  // namespace popgen

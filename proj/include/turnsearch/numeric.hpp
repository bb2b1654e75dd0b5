#pragma once

#include <gmpxx.h>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>

#include "turnsearch/errors.hpp"

namespace turnsearch {

using Rational = mpq_class;

template <class T>
inline constexpr bool is_rational_v = std::is_same_v<T, Rational>;

// Runtime selection between the two scalar fields the library is
// instantiated for.
struct ArithmeticMode {
  enum class Kind { Float64, ExactRational };

  Kind kind = Kind::Float64;
  double tolerance = 1e-9;

  static ArithmeticMode float64(double tol = 1e-9) {
    if (!(tol > 0.0) || !std::isfinite(tol)) {
      throw InputError("float tolerance must be a positive finite number");
    }
    return {Kind::Float64, tol};
  }
  static ArithmeticMode exact() { return {Kind::ExactRational, 0.0}; }

  bool is_exact() const { return kind == Kind::ExactRational; }
  std::string_view name() const { return is_exact() ? "rational" : "float"; }
};

/// Comparison policy for a scalar field. Exact fields use tol == 0.
template <class T>
struct Tolerance {
  T tol{};

  bool is_zero(const T& v) const { return v <= tol && v >= -tol; }
  bool is_pos(const T& v) const { return v > tol; }
  bool is_neg(const T& v) const { return v < -tol; }
  bool le(const T& a, const T& b) const { return a <= b + tol; }
};

template <class T>
Tolerance<T> tolerance_for(const ArithmeticMode& mode) {
  if constexpr (is_rational_v<T>) {
    (void)mode;
    return Tolerance<T>{Rational(0)};
  } else {
    return Tolerance<T>{static_cast<T>(mode.tolerance)};
  }
}

namespace num {

template <class T>
T abs(const T& v) {
  if constexpr (is_rational_v<T>) {
    return Rational(::abs(v));
  } else {
    return std::abs(v);
  }
}

template <class T>
double to_double(const T& v) {
  if constexpr (is_rational_v<T>) {
    return v.get_d();
  } else {
    return static_cast<double>(v);
  }
}

/// Exact conversion of a double into the field.
template <class T>
T from_double(double v) {
  if constexpr (is_rational_v<T>) {
    if (!std::isfinite(v)) throw InputError("non-finite value cannot be made rational");
    return Rational(v);
  } else {
    return static_cast<T>(v);
  }
}

template <class T>
T pow(const T& base, int exponent) {
  T result(1);
  T b = base;
  bool invert = exponent < 0;
  unsigned e = static_cast<unsigned>(invert ? -exponent : exponent);
  while (e != 0) {
    if (e & 1U) result *= b;
    b *= b;
    e >>= 1U;
  }
  if (invert) result = T(1) / result;
  return result;
}

template <class T>
T ratio(long p, long q) {
  if constexpr (is_rational_v<T>) {
    Rational r(p, q);
    r.canonicalize();
    return r;
  } else {
    return static_cast<T>(p) / static_cast<T>(q);
  }
}

/// Fixed-notation decimal text, always with '.' as separator.
inline std::string format_fixed(double v, int decimals) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::fixed, decimals);
  if (res.ec != std::errc{}) return std::string("nan");
  std::string out(buf, res.ptr);
  if (out.size() > 1 && out[0] == '-' && out.find_first_not_of("-0.") == std::string::npos) {
    out.erase(0, 1);
  }
  return out;
}

/// Shortest round-trip representation.
inline std::string format_double(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

template <class T>
std::string to_string(const T& v) {
  if constexpr (is_rational_v<T>) {
    return v.get_str();
  } else {
    return format_double(static_cast<double>(v));
  }
}

// Truncation toward zero at four decimals; truncated values stay valid lower bounds.
// Returns the integer count of 1e-4 units. Float inputs get a guard of 1e-10
// so that a value computed as 0.24999999999997 still truncates to 0.2500.
inline std::int64_t truncate4_units(double v) {
  constexpr double guard = 1e-6;
  double scaled = std::abs(v) * 1e4 + guard;
  auto units = static_cast<std::int64_t>(std::floor(scaled));
  return v < 0 ? -units : units;
}

inline std::int64_t truncate4_units(const Rational& v) {
  mpz_class num = v.get_num() * 10000;
  mpz_class q;
  mpz_tdiv_q(q.get_mpz_t(), num.get_mpz_t(), v.get_den().get_mpz_t());
  return q.get_si();
}

inline std::string format_units4(std::int64_t units) {
  std::string sign = units < 0 ? "-" : "";
  std::uint64_t a = static_cast<std::uint64_t>(units < 0 ? -units : units);
  std::string frac = std::to_string(a % 10000);
  frac.insert(0, 4 - frac.size(), '0');
  return sign + std::to_string(a / 10000) + "." + frac;
}

template <class T>
std::string truncate4(const T& v) {
  return format_units4(truncate4_units(v));
}

/// Parses "3", "-2.75", "1e-3" or "17/12" into an exact rational.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  if (s.empty()) throw InputError("empty numeric literal");
  if (s.find('/') != std::string::npos) {
    Rational r;
    if (r.set_str(s, 10) != 0 || r.get_den() == 0) {
      throw InputError("malformed fraction '" + s + "'");
    }
    r.canonicalize();
    return r;
  }
  std::size_t pos = 0;
  bool negative = false;
  if (s[pos] == '+' || s[pos] == '-') negative = s[pos++] == '-';
  mpz_class digits = 0;
  long scale = 0;
  bool any = false;
  bool seen_point = false;
  for (; pos < s.size(); ++pos) {
    char ch = s[pos];
    if (ch >= '0' && ch <= '9') {
      digits = digits * 10 + (ch - '0');
      if (seen_point) --scale;
      any = true;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any) throw InputError("malformed number '" + s + "'");
  if (pos < s.size()) {
    if (s[pos] != 'e' && s[pos] != 'E') throw InputError("malformed number '" + s + "'");
    long exponent = 0;
    auto res = std::from_chars(s.data() + pos + 1, s.data() + s.size(), exponent);
    if (res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
      throw InputError("malformed exponent in '" + s + "'");
    }
    scale += exponent;
  }
  Rational r(digits);
  mpz_class ten_pow;
  mpz_ui_pow_ui(ten_pow.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  if (scale < 0) {
    r /= Rational(ten_pow);
  } else {
    r *= Rational(ten_pow);
  }
  r.canonicalize();
  return negative ? Rational(-r) : r;
}

template <class T>
T parse_scalar(std::string_view text) {
  if constexpr (is_rational_v<T>) {
    return parse_rational(text);
  } else {
    if (text.find('/') != std::string_view::npos) return parse_rational(text).get_d();
    double v = 0.0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), v);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
      throw InputError("malformed number '" + std::string(text) + "'");
    }
    return v;
  }
}

}  // namespace num
}  // namespace turnsearch

#pragma once

// Numeric substrate: an exact rational regime backed by boost multiprecision
// and a double regime with a global comparison tolerance.  Geometric data
// (lattice generators, translates, frequencies) is held in one of the two;
// term coefficients are always complex doubles.

#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

namespace qcomb {

// expression templates off: arithmetic must yield Rational itself so the
// generic scalar code deduces one type everywhere
using Rational = boost::multiprecision::number<
    boost::multiprecision::backends::rational_adaptor<
        boost::multiprecision::backends::cpp_int_backend<>>,
    boost::multiprecision::et_off>;
using BigInt = boost::multiprecision::cpp_int;
using Complex = std::complex<double>;

// Relative comparison tolerance for the double regime.
inline constexpr double kEqTol = 1e-9;
// Absolute coefficient pruning threshold (double regime only).
inline constexpr double kDropTol = 1e-12;
// Highest derivative order the symbolic machinery accepts.
inline constexpr int kMaxDerivativeOrder = 8;

enum class Regime { exact, floating };

inline bool approx_eq(double a, double b, double tol = kEqTol) {
  double scale = std::max({1.0, std::fabs(a), std::fabs(b)});
  return std::fabs(a - b) <= tol * scale;
}

// Formats a double so that parsing the result recovers the identical bits.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

inline std::string format_complex_pair(const Complex& c, std::string* im_out) {
  *im_out = format_double(c.imag());
  return format_double(c.real());
}

template <class S>
struct ScalarOps;

template <>
struct ScalarOps<Rational> {
  static constexpr Regime regime = Regime::exact;
  static bool eq(const Rational& a, const Rational& b) { return a == b; }
  static bool less(const Rational& a, const Rational& b) { return a < b; }
  static bool is_zero(const Rational& a) { return a == 0; }
  static double to_double(const Rational& a) { return a.convert_to<double>(); }
  static Rational from_int(long long v) { return Rational(v); }

  static BigInt floor_big(const Rational& a) {
    BigInt n = boost::multiprecision::numerator(a);
    BigInt d = boost::multiprecision::denominator(a);
    BigInt q = n / d;
    if (n < 0 && q * d != n) --q;
    return q;
  }
  static long long floor_int(const Rational& a) {
    return floor_big(a).convert_to<long long>();
  }
  static bool is_integer(const Rational& a) {
    return boost::multiprecision::denominator(a) == 1;
  }
  // Fractional part in [0,1); exact.
  static Rational fract(const Rational& a) { return a - Rational(floor_big(a)); }

  static std::string to_string(const Rational& a) { return a.str(); }
};

template <>
struct ScalarOps<double> {
  static constexpr Regime regime = Regime::floating;
  static bool eq(double a, double b) { return approx_eq(a, b); }
  static bool less(double a, double b) { return a < b; }
  static bool is_zero(double a) { return approx_eq(a, 0.0); }
  static double to_double(double a) { return a; }
  static double from_int(long long v) { return static_cast<double>(v); }

  static long long floor_int(double a) { return static_cast<long long>(std::floor(a)); }
  static bool is_integer(double a) {
    return approx_eq(a, std::nearbyint(a));
  }
  static double fract(double a) { return a - std::floor(a); }

  static std::string to_string(double a) { return format_double(a); }
};

// Parses "p/q", "p", or a decimal/scientific literal.  In the exact regime a
// terminating decimal is converted to the rational it denotes.
Rational parse_rational(const std::string& text);
double parse_double(const std::string& text);

template <class S>
S parse_scalar(const std::string& text);

template <>
inline Rational parse_scalar<Rational>(const std::string& text) {
  return parse_rational(text);
}
template <>
inline double parse_scalar<double>(const std::string& text) {
  return parse_double(text);
}

template <class S>
int scalar_sign(const S& a) {
  if (ScalarOps<S>::is_zero(a)) return 0;
  return ScalarOps<S>::less(a, ScalarOps<S>::from_int(0)) ? -1 : 1;
}

}  // namespace qcomb

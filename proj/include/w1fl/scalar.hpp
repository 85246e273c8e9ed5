#pragma once

// Ordered-field scalars used throughout the solver. Two backends:
// IEEE double and GMP rationals (mpq_class). Every algorithm in the
// library is a template over a type satisfying `Scalar`.

#include <gmpxx.h>

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace w1fl {

using Rational = mpq_class;

template <typename T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr const char* name = "f64";

  static double from_ratio(std::int64_t p, std::int64_t q) {
    return static_cast<double>(p) / static_cast<double>(q);
  }
  static double from_double(double v) { return v; }
  static double to_double(double v) { return v; }
  static std::string to_string(double v);
  static double parse(std::string_view text);

  /// Equal-time test used when ordering simultaneous candidates.
  static bool tie(double a, double b) {
    return std::abs(a - b) <= 1e-12 * std::max({1.0, std::abs(a), std::abs(b)});
  }
  /// Treat the lines with slopes b and d as parallel.
  static bool parallel(double b, double d) {
    return std::abs(b - d) <= 1e-15 * std::max(std::abs(b), std::abs(d));
  }
  static bool is_zero(double v) { return v == 0.0; }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";

  static Rational from_ratio(std::int64_t p, std::int64_t q) {
    Rational r(mpz_class(std::to_string(p)), mpz_class(std::to_string(q)));
    r.canonicalize();
    return r;
  }
  static Rational from_double(double v) { return Rational(v); }
  static double to_double(const Rational& v) { return v.get_d(); }
  static std::string to_string(const Rational& v);
  /// Accepts "p", "p/q", and decimal notation ("-0.02", "1e-3"), exactly.
  static Rational parse(std::string_view text);

  static bool tie(const Rational& a, const Rational& b) { return a == b; }
  static bool parallel(const Rational& b, const Rational& d) { return b == d; }
  static bool is_zero(const Rational& v) { return sgn(v) == 0; }
};

template <typename T>
concept Scalar = requires(const T& a, const T& b) {
  { T(a + b) };
  { T(a - b) };
  { T(a * b) };
  { T(a / b) };
  { T(-a) };
  { a < b } -> std::convertible_to<bool>;
  { a == b } -> std::convertible_to<bool>;
  { ScalarTraits<T>::exact } -> std::convertible_to<bool>;
  { ScalarTraits<T>::to_double(a) } -> std::convertible_to<double>;
};

template <Scalar T>
T from_int(std::int64_t v) {
  return ScalarTraits<T>::from_ratio(v, 1);
}

template <Scalar T>
T abs_value(const T& v) {
  return v < T(0) ? T(-v) : v;
}

template <Scalar T>
double to_double(const T& v) {
  return ScalarTraits<T>::to_double(v);
}

template <Scalar T>
std::string to_string(const T& v) {
  return ScalarTraits<T>::to_string(v);
}

/// Extended scalar: a finite value or +infinity. Candidate event times use it.
template <Scalar T>
struct ExtScalar {
  bool finite = false;
  T value{};

  static ExtScalar infinity() { return {}; }
  static ExtScalar of(T v) { return {true, std::move(v)}; }

  friend bool operator<(const ExtScalar& a, const ExtScalar& b) {
    if (!a.finite) return false;
    if (!b.finite) return true;
    return a.value < b.value;
  }
};

}  // namespace w1fl

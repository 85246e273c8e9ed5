#include "w1fl/scalar.hpp"

#include <charconv>
#include <stdexcept>
#include <system_error>

#include "w1fl/types.hpp"

namespace w1fl {

std::string ScalarTraits<double>::to_string(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("to_chars failed");
  return std::string(buf, ptr);
}

double ScalarTraits<double>::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    return ScalarTraits<Rational>::parse(text).get_d();
  }
  double v = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw InvalidInput("not a number: '" + std::string(text) + "'");
  }
  return v;
}

std::string ScalarTraits<Rational>::to_string(const Rational& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

mpz_class parse_integer(std::string_view s, std::string_view whole) {
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  if (!all_digits(s)) throw InvalidInput("not a rational: '" + std::string(whole) + "'");
  mpz_class z(std::string(s), 10);
  return neg ? mpz_class(-z) : z;
}

// Decimal with optional fraction part and exponent, converted exactly.
Rational parse_decimal(std::string_view s, std::string_view whole) {
  int exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    std::string_view e = s.substr(epos + 1);
    auto [ptr, ec] = std::from_chars(e.data() + (e.starts_with('+') ? 1 : 0), e.data() + e.size(), exp10);
    if (ec != std::errc() || ptr != e.data() + e.size()) {
      throw InvalidInput("not a rational: '" + std::string(whole) + "'");
    }
    s = s.substr(0, epos);
  }
  bool neg = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    neg = s.front() == '-';
    s.remove_prefix(1);
  }
  std::string digits;
  auto dot = s.find('.');
  if (dot == std::string_view::npos) {
    digits = std::string(s);
  } else {
    std::string_view frac = s.substr(dot + 1);
    digits = std::string(s.substr(0, dot)) + std::string(frac);
    exp10 -= static_cast<int>(frac.size());
  }
  if (!all_digits(digits)) throw InvalidInput("not a rational: '" + std::string(whole) + "'");
  mpz_class num(digits, 10);
  mpz_class scale;
  mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::abs(exp10)));
  Rational r = exp10 >= 0 ? Rational(num * scale) : Rational(num, scale);
  r.canonicalize();
  return neg ? Rational(-r) : r;
}

}  // namespace

Rational ScalarTraits<Rational>::parse(std::string_view text) {
  auto slash = text.find('/');
  if (slash != std::string_view::npos) {
    mpz_class p = parse_integer(text.substr(0, slash), text);
    mpz_class q = parse_integer(text.substr(slash + 1), text);
    if (q == 0) throw InvalidInput("zero denominator: '" + std::string(text) + "'");
    Rational r(p, q);
    r.canonicalize();
    return r;
  }
  return parse_decimal(text, text);
}

}  // namespace w1fl

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <compare>
#include <cstdint>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace treedist {

using BigInt = boost::multiprecision::cpp_int;

/// Exact rational scalar. Always in lowest terms with a positive denominator.
///
/// Every height, length, delta and distance in the library is a Rational;
/// nothing in the algorithms touches floating point.
class Rational {
 public:
  using value_type = boost::multiprecision::cpp_rational;

  Rational() = default;
  Rational(long long v) : v_(v) {}  // NOLINT: implicit from integers is intended
  Rational(long long num, long long den) : v_(make(BigInt(num), BigInt(den))) {}
  Rational(const BigInt& num, const BigInt& den) : v_(make(num, den)) {}
  explicit Rational(value_type v) : v_(std::move(v)) {}

  /// Accepts `p`, `p/q` and finite decimals such as `-2.5` (converted exactly).
  static Rational parse(std::string_view text);

  BigInt numerator() const { return boost::multiprecision::numerator(v_); }
  BigInt denominator() const { return boost::multiprecision::denominator(v_); }
  bool is_integer() const { return denominator() == 1; }
  const value_type& value() const { return v_; }

  Rational half() const { return Rational(value_type(v_ / 2)); }
  Rational abs() const { return v_ < 0 ? Rational(value_type(-v_)) : *this; }

  /// `p` for integers, `p/q` otherwise. Round-trips through parse().
  std::string str() const;
  /// Display-only approximation with `digits` significant digits.
  std::string decimal(int digits = 6) const;
  double to_double() const { return v_.convert_to<double>(); }

  Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
  Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
  Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.v_ == 0) throw std::domain_error("rational division by zero");
    v_ /= o.v_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(value_type(-a.v_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.v_ == b.v_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    if (a.v_ < b.v_) return std::strong_ordering::less;
    if (a.v_ > b.v_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static value_type make(const BigInt& num, const BigInt& den) {
    if (den == 0) throw std::domain_error("rational with zero denominator");
    if (den < 0) return value_type(BigInt(-num), BigInt(-den));
    return value_type(num, den);
  }

  value_type v_{0};
};

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&]() -> Rational {
    throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");
  };
  if (text.empty()) return fail();

  auto parse_int = [&](std::string_view s, bool allow_sign) -> BigInt {
    bool neg = false;
    if (allow_sign && !s.empty() && (s[0] == '-' || s[0] == '+')) {
      neg = s[0] == '-';
      s.remove_prefix(1);
    }
    if (s.empty()) fail();
    BigInt out = 0;
    for (char c : s) {
      if (c < '0' || c > '9') fail();
      out = out * 10 + (c - '0');
    }
    return neg ? BigInt(-out) : out;
  };

  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    BigInt num = parse_int(text.substr(0, slash), true);
    BigInt den = parse_int(text.substr(slash + 1), false);
    if (den == 0) return fail();
    return Rational(num, den);
  }

  if (auto dot = text.find('.'); dot != std::string_view::npos) {
    std::string_view ip = text.substr(0, dot);
    std::string_view fp = text.substr(dot + 1);
    bool neg = !ip.empty() && ip[0] == '-';
    if (!ip.empty() && (ip[0] == '-' || ip[0] == '+')) ip.remove_prefix(1);
    if (ip.empty() && fp.empty()) return fail();
    BigInt whole = ip.empty() ? BigInt(0) : parse_int(ip, false);
    BigInt frac = fp.empty() ? BigInt(0) : parse_int(fp, false);
    BigInt scale = 1;
    for (std::size_t i = 0; i < fp.size(); ++i) scale *= 10;
    BigInt num = whole * scale + frac;
    return Rational(neg ? BigInt(-num) : num, scale);
  }

  return Rational(parse_int(text, true), BigInt(1));
}

inline std::string Rational::str() const {
  std::ostringstream os;
  os << numerator();
  if (!is_integer()) os << '/' << denominator();
  return os.str();
}

inline std::string Rational::decimal(int digits) const {
  std::ostringstream os;
  os << std::setprecision(digits) << to_double();
  return os.str();
}

inline Rational min(const Rational& a, const Rational& b) { return b < a ? b : a; }
inline Rational max(const Rational& a, const Rational& b) { return a < b ? b : a; }

}  // namespace treedist

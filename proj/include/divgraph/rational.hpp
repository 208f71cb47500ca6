#pragma once

// Exact non-negative-friendly rational numbers for the real-valued parameters
// (x, y, z, t) of the counting and chain functions. Every set in this library
// is defined by sharp inequalities against integers, so parameters are kept
// exact and compared by cross-multiplication in 128-bit arithmetic.

#include <charconv>
#include <compare>
#include <cstdint>
#include <limits>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace divgraph {

using i128 = __int128;
using u128 = unsigned __int128;

class Rational {
 public:
  using int_type = std::int64_t;

  constexpr Rational() = default;
  constexpr Rational(int_type n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(int_type num, int_type den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    assign(static_cast<i128>(num), static_cast<i128>(den));
  }

  /// Parses "12", "-3", "2.5", "1e6", "1.5E-3", "7/2".
  static Rational parse(std::string_view text) {
    auto fail = [&] { throw std::invalid_argument("not a number: '" + std::string(text) + "'"); };
    if (text.empty()) fail();
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
      Rational a = parse(text.substr(0, slash));
      Rational b = parse(text.substr(slash + 1));
      if (b.num_ == 0) throw std::domain_error("Rational: zero denominator");
      return a / b;
    }
    std::size_t pos = 0;
    bool negative = false;
    if (text[pos] == '+' || text[pos] == '-') negative = text[pos++] == '-';
    i128 mantissa = 0;
    int scale = 0;  // power of ten applied to the mantissa
    bool digits = false, dot = false;
    for (; pos < text.size(); ++pos) {
      char c = text[pos];
      if (c >= '0' && c <= '9') {
        digits = true;
        mantissa = mantissa * 10 + (c - '0');
        if (mantissa > kParseCap) fail();
        if (dot) --scale;
      } else if (c == '.' && !dot) {
        dot = true;
      } else {
        break;
      }
    }
    if (!digits) fail();
    if (pos < text.size()) {
      if (text[pos] != 'e' && text[pos] != 'E') fail();
      ++pos;
      int exponent = 0;
      auto rest = text.substr(pos);
      if (!rest.empty() && rest.front() == '+') rest.remove_prefix(1);
      auto [end, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), exponent);
      if (ec != std::errc() || end != rest.data() + rest.size()) fail();
      scale += exponent;
    }
    i128 num = negative ? -mantissa : mantissa;
    i128 den = 1;
    for (; scale > 0; --scale) {
      num *= 10;
      if (num > kParseCap || num < -kParseCap) fail();
    }
    for (; scale < 0; ++scale) {
      den *= 10;
      if (den > kParseCap) fail();
    }
    Rational r;
    r.assign(num, den);
    return r;
  }

  [[nodiscard]] constexpr int_type num() const { return num_; }
  [[nodiscard]] constexpr int_type den() const { return den_; }
  [[nodiscard]] constexpr bool is_integer() const { return den_ == 1; }

  [[nodiscard]] int_type floor() const {
    int_type q = num_ / den_;
    if (num_ % den_ != 0 && num_ < 0) --q;
    return q;
  }
  [[nodiscard]] int_type ceil() const { return -Rational(-num_, den_).floor(); }
  [[nodiscard]] double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// floor(this * k) without intermediate overflow.
  [[nodiscard]] i128 floor_times(i128 k) const {
    i128 p = static_cast<i128>(num_) * k;
    i128 q = p / den_;
    if (p % den_ != 0 && p < 0) --q;
    return q;
  }

  [[nodiscard]] std::string str() const {
    return den_ == 1 ? std::to_string(num_) : std::to_string(num_) + "/" + std::to_string(den_);
  }

  friend Rational operator*(const Rational& a, const Rational& b) {
    Rational r;
    r.assign(static_cast<i128>(a.num_) * b.num_, static_cast<i128>(a.den_) * b.den_);
    return r;
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("Rational: division by zero");
    Rational r;
    r.assign(static_cast<i128>(a.num_) * b.den_, static_cast<i128>(a.den_) * b.num_);
    return r;
  }
  friend Rational operator+(const Rational& a, const Rational& b) {
    Rational r;
    r.assign(static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_,
             static_cast<i128>(a.den_) * b.den_);
    return r;
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return a + Rational(-b.num_, b.den_);
  }

  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    i128 lhs = static_cast<i128>(a.num_) * b.den_;
    i128 rhs = static_cast<i128>(b.num_) * a.den_;
    return lhs <=> rhs;
  }
  friend bool operator==(const Rational& a, const Rational& b) = default;

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  static constexpr i128 kParseCap = static_cast<i128>(1) << 100;

  void assign(i128 num, i128 den) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    i128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    constexpr i128 lim = std::numeric_limits<int_type>::max();
    if (num > lim || num < -lim || den > lim) throw std::overflow_error("Rational: value out of 64-bit range");
    num_ = static_cast<int_type>(num);
    den_ = static_cast<int_type>(den);
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  int_type num_ = 0;
  int_type den_ = 1;
};

}  // namespace divgraph

#pragma once

#include <cstdint>
#include <numeric>
#include <string>
#include <string_view>

#include "lplab/errors.hpp"

namespace lplab {

// Reduced fraction over int64 with __int128 intermediates. Every public
// operation either returns the exact canonical result (gcd-reduced,
// positive denominator) or throws ResourceLimitError; results are never
// silently rounded.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(std::int64_t n) : num_(n), den_(1) {}  // NOLINT(runtime/explicit)
  Rational(std::int64_t n, std::int64_t d) {
    if (d == 0) throw DomainError("Rational: zero denominator");
    normalize(static_cast<__int128>(n), static_cast<__int128>(d));
  }

  std::int64_t num() const { return num_; }
  std::int64_t den() const { return den_; }
  bool is_zero() const { return num_ == 0; }
  bool is_negative() const { return num_ < 0; }

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_,
                i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw DomainError("Rational: division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& b) { return *this = *this + b; }
  Rational& operator-=(const Rational& b) { return *this = *this - b; }
  Rational& operator*=(const Rational& b) { return *this = *this * b; }
  Rational& operator/=(const Rational& b) { return *this = *this / b; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) {
    return !(a == b);
  }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator<=(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ <= i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator>=(const Rational& a, const Rational& b) {
    return b <= a;
  }

  Rational abs() const { return num_ < 0 ? -*this : *this; }

  double to_double() const {
    return static_cast<double>(num_) / static_cast<double>(den_);
  }

  // Integer power; e in either sign (negative inverts first).
  Rational pow(std::int64_t e) const {
    Rational base = *this;
    if (e < 0) {
      base = Rational(1) / base;
      e = -e;
    }
    Rational out(1);
    while (e > 0) {
      if (e & 1) out *= base;
      base = (e > 1) ? base * base : base;
      e >>= 1;
    }
    return out;
  }

  // Accepts "n", "-n", "n/d"; whitespace-free.
  static Rational parse(std::string_view s);

  std::string to_string() const {
    std::string out = std::to_string(num_);
    if (den_ != 1) out += "/" + std::to_string(den_);
    return out;
  }

 private:
  using i128 = __int128;

  static Rational make(i128 n, i128 d) {
    Rational r;
    r.normalize(n, d);
    return r;
  }

  void normalize(i128 n, i128 d) {
    if (d < 0) {
      n = -n;
      d = -d;
    }
    if (n == 0) {
      num_ = 0;
      den_ = 1;
      return;
    }
    i128 g = gcd128(n < 0 ? -n : n, d);
    n /= g;
    d /= g;
    constexpr i128 kMax = INT64_MAX;
    if (n > kMax || n < -kMax || d > kMax)
      throw ResourceLimitError("Rational: exact arithmetic overflow");
    num_ = static_cast<std::int64_t>(n);
    den_ = static_cast<std::int64_t>(d);
  }

  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) {
      i128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  std::int64_t num_;
  std::int64_t den_;
};

inline Rational Rational::parse(std::string_view s) {
  auto slash = s.find('/');
  auto to_i64 = [](std::string_view t) -> std::int64_t {
    if (t.empty()) throw DomainError("Rational: empty numeral");
    std::size_t pos = 0;
    bool neg = false;
    if (t[0] == '-' || t[0] == '+') {
      neg = t[0] == '-';
      pos = 1;
    }
    if (pos == t.size()) throw DomainError("Rational: bare sign");
    std::int64_t v = 0;
    for (; pos < t.size(); ++pos) {
      if (t[pos] < '0' || t[pos] > '9')
        throw DomainError("Rational: bad digit in '" + std::string(t) + "'");
      if (v > (INT64_MAX - 9) / 10)
        throw ResourceLimitError("Rational: numeral overflow");
      v = v * 10 + (t[pos] - '0');
    }
    return neg ? -v : v;
  };
  if (slash == std::string_view::npos) return Rational(to_i64(s));
  return Rational(to_i64(s.substr(0, slash)), to_i64(s.substr(slash + 1)));
}

}  // namespace lplab

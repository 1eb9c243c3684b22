#pragma once

#include <complex>
#include <string>

#include "lplab/rational.hpp"

namespace lplab {

// Exact complex number: a pair of rationals. The exact counterpart of the
// Float coefficient mode; the two modes never mix (distinct C++ types, no
// implicit conversion either way).
struct ExactScalar {
  Rational re;
  Rational im;

  ExactScalar() = default;
  ExactScalar(Rational r) : re(std::move(r)) {}  // NOLINT(runtime/explicit)
  ExactScalar(std::int64_t n) : re(n) {}         // NOLINT(runtime/explicit)
  ExactScalar(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  bool is_zero() const { return re.is_zero() && im.is_zero(); }
  bool is_real() const { return im.is_zero(); }

  friend ExactScalar operator+(const ExactScalar& a, const ExactScalar& b) {
    return {a.re + b.re, a.im + b.im};
  }
  friend ExactScalar operator-(const ExactScalar& a, const ExactScalar& b) {
    return {a.re - b.re, a.im - b.im};
  }
  friend ExactScalar operator*(const ExactScalar& a, const ExactScalar& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend ExactScalar operator/(const ExactScalar& a, const ExactScalar& b) {
    Rational n = b.re * b.re + b.im * b.im;
    if (n.is_zero()) throw DomainError("ExactScalar: division by zero");
    return {(a.re * b.re + a.im * b.im) / n, (a.im * b.re - a.re * b.im) / n};
  }
  ExactScalar operator-() const { return {-re, -im}; }
  ExactScalar& operator+=(const ExactScalar& b) { return *this = *this + b; }
  ExactScalar& operator-=(const ExactScalar& b) { return *this = *this - b; }
  ExactScalar& operator*=(const ExactScalar& b) { return *this = *this * b; }

  friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const ExactScalar& a, const ExactScalar& b) {
    return !(a == b);
  }

  ExactScalar conj() const { return {re, -im}; }
  Rational abs_squared() const { return re * re + im * im; }
  bool has_unit_modulus() const { return abs_squared() == Rational(1); }

  std::complex<double> to_complex() const {
    return {re.to_double(), im.to_double()};
  }

  ExactScalar pow(std::int64_t e) const {
    ExactScalar base = *this;
    if (e < 0) {
      base = ExactScalar(1) / base;
      e = -e;
    }
    ExactScalar out(1);
    while (e > 0) {
      if (e & 1) out *= base;
      base = (e > 1) ? base * base : base;
      e >>= 1;
    }
    return out;
  }

  std::string to_string() const {
    if (im.is_zero()) return re.to_string();
    return re.to_string() + (im.is_negative() ? "" : "+") + im.to_string() +
           "i";
  }
};

using FloatScalar = std::complex<double>;

// Scalar trait glue used by the templated group-ring layer.
template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<ExactScalar> {
  static constexpr bool is_exact = true;
  static const char* mode_name() { return "exact"; }
  static bool is_zero(const ExactScalar& s) { return s.is_zero(); }
  static std::complex<double> to_complex(const ExactScalar& s) {
    return s.to_complex();
  }
  static ExactScalar conj(const ExactScalar& s) { return s.conj(); }
  static ExactScalar one() { return ExactScalar(1); }
};

template <>
struct ScalarTraits<FloatScalar> {
  static constexpr bool is_exact = false;
  static const char* mode_name() { return "float"; }
  static bool is_zero(const FloatScalar& s) {
    return s.real() == 0.0 && s.imag() == 0.0;
  }
  static std::complex<double> to_complex(const FloatScalar& s) { return s; }
  static FloatScalar conj(const FloatScalar& s) { return std::conj(s); }
  static FloatScalar one() { return {1.0, 0.0}; }
};

}  // namespace lplab

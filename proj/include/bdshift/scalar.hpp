#pragma once

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <string>

#include <gmpxx.h>

namespace bdshift {

using Rational = mpq_class;

Rational make_rational(std::int64_t num, std::int64_t den = 1);
Rational parse_rational(const std::string& text);
std::string to_string(const Rational& q);

/// Exact Gaussian rational re + im*i.
struct Scalar {
  Rational re;
  Rational im;

  Scalar() = default;
  Scalar(std::int64_t value) : re(make_rational(value)), im(0) {}  // NOLINT: implicit by intent
  Scalar(Rational real) : re(std::move(real)), im(0) {}            // NOLINT
  Scalar(Rational real, Rational imag) : re(std::move(real)), im(std::move(imag)) {}

  static Scalar i() { return Scalar(Rational(0), Rational(1)); }

  bool is_zero() const { return sgn(re) == 0 && sgn(im) == 0; }
  bool is_real() const { return sgn(im) == 0; }

  Scalar conj() const { return Scalar(re, -im); }
  /// Exact |z|^2.
  Rational norm_sq() const { return re * re + im * im; }
  std::complex<double> to_complex() const { return {re.get_d(), im.get_d()}; }

  Scalar& operator+=(const Scalar& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Scalar& operator-=(const Scalar& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Scalar& operator*=(const Scalar& o);
  Scalar& operator/=(const Scalar& o);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend Scalar operator-(const Scalar& a) { return Scalar(-a.re, -a.im); }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }
};

/// "a/b", "a/b i" or "a/b+c/d i"; inverse of parse_scalar.
std::string to_string(const Scalar& s);
/// Accepts the forms produced by to_string plus bare "i" and "-i".
Scalar parse_scalar(const std::string& text);
std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace bdshift

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <string>

#include "error.hpp"

namespace scy {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Element of Q(i).  This is the coefficient field of every other ring in the
// engine; all arithmetic is exact and values are always in canonical form
// (cpp_rational keeps fractions reduced).
struct GaussRat {
  Rational re{0};
  Rational im{0};

  GaussRat() = default;
  GaussRat(int v) : re(v) {}
  GaussRat(long v) : re(v) {}
  GaussRat(Rational r) : re(std::move(r)) {}
  GaussRat(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static GaussRat i() { return GaussRat(Rational(0), Rational(1)); }
  static GaussRat of(long num, long den) {
    require(den != 0, "not-invertible", "zero denominator");
    return GaussRat(Rational(num, den));
  }

  bool is_zero() const { return re == 0 && im == 0; }
  bool is_real() const { return im == 0; }

  GaussRat conj() const { return GaussRat(re, -im); }

  // |z|^2, a nonnegative rational.
  Rational norm2() const { return re * re + im * im; }

  GaussRat inverse() const {
    require(!is_zero(), "not-invertible", "division by zero");
    Rational n = norm2();
    return GaussRat(re / n, -im / n);
  }

  friend GaussRat operator+(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re + b.re, a.im + b.im);
  }
  friend GaussRat operator-(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re - b.re, a.im - b.im);
  }
  friend GaussRat operator-(const GaussRat& a) { return GaussRat(-a.re, -a.im); }
  friend GaussRat operator*(const GaussRat& a, const GaussRat& b) {
    return GaussRat(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
  }
  friend GaussRat operator/(const GaussRat& a, const GaussRat& b) { return a * b.inverse(); }

  GaussRat& operator+=(const GaussRat& b) { return *this = *this + b; }
  GaussRat& operator-=(const GaussRat& b) { return *this = *this - b; }
  GaussRat& operator*=(const GaussRat& b) { return *this = *this * b; }

  friend bool operator==(const GaussRat& a, const GaussRat& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const GaussRat& a, const GaussRat& b) { return !(a == b); }
};

inline std::string to_string(const Rational& r) { return r.str(); }

// Canonical rendering: "0", "3/2", "i", "-i", "2i", "1/2-3i", ...
inline std::string to_string(const GaussRat& z) {
  auto imag_part = [](const Rational& v) -> std::string {
    if (v == 1) return "i";
    if (v == -1) return "-i";
    return v.str() + "i";
  };
  if (z.is_zero()) return "0";
  if (z.im == 0) return z.re.str();
  if (z.re == 0) return imag_part(z.im);
  std::string s = z.re.str();
  if (z.im > 0) s += "+";
  return s + imag_part(z.im);
}

} // namespace scy

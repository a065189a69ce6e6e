#pragma once

#include <cmath>
#include <complex>
#include <limits>

// Compact double-double arithmetic (Dekker / Knuth error-free transforms).
// Provides ~32 significant digits; enough headroom for polynomial orbits of
// length ~100 whose monomial representation loses one bit per step.
// Requires -ffp-contract=off so the splits round exactly.

namespace maxmod::dd {

struct Real {
  double hi = 0.0;
  double lo = 0.0;

  Real() = default;
  Real(double h) : hi(h), lo(0.0) {}
  Real(double h, double l) : hi(h), lo(l) {}

  explicit operator double() const { return hi; }
};

inline Real quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline Real two_sum(double a, double b) {
  double s = a + b;
  double v = s - a;
  return {s, (a - (s - v)) + (b - v)};
}

inline Real two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline Real operator+(Real a, Real b) {
  Real s = two_sum(a.hi, b.hi);
  double lo = s.lo + a.lo + b.lo;
  return quick_two_sum(s.hi, lo);
}

inline Real operator-(Real a) { return {-a.hi, -a.lo}; }
inline Real operator-(Real a, Real b) { return a + (-b); }

inline Real operator*(Real a, Real b) {
  Real p = two_prod(a.hi, b.hi);
  double lo = p.lo + a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p.hi, lo);
}

inline Real operator/(Real a, Real b) {
  double q1 = a.hi / b.hi;
  Real r = a - b * Real(q1);
  double q2 = r.hi / b.hi;
  r = r - b * Real(q2);
  double q3 = r.hi / b.hi;
  Real q = quick_two_sum(q1, q2);
  return q + Real(q3);
}

inline Real& operator+=(Real& a, Real b) { a = a + b; return a; }
inline Real& operator-=(Real& a, Real b) { a = a - b; return a; }
inline Real& operator*=(Real& a, Real b) { a = a * b; return a; }

inline bool operator<(Real a, Real b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(Real a, Real b) { return b < a; }

inline Real abs(Real a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

inline Real sqrt(Real a) {
  if (a.hi <= 0.0) return Real(0.0);
  double x = std::sqrt(a.hi);
  Real x0(x);
  // one Newton step doubles the precision of the double seed
  Real r = (x0 + a / x0) * Real(0.5);
  return r;
}

struct Complex {
  Real re, im;

  Complex() = default;
  Complex(Real r, Real i) : re(r), im(i) {}
  Complex(double r, double i = 0.0) : re(r), im(i) {}
  Complex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> to_std() const { return {re.hi + re.lo, im.hi + im.lo}; }
};

inline Complex operator+(Complex a, Complex b) { return {a.re + b.re, a.im + b.im}; }
inline Complex operator-(Complex a, Complex b) { return {a.re - b.re, a.im - b.im}; }
inline Complex operator-(Complex a) { return {-a.re, -a.im}; }

inline Complex operator*(Complex a, Complex b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline Complex operator/(Complex a, Complex b) {
  Real d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}

inline Complex& operator+=(Complex& a, Complex b) { a = a + b; return a; }
inline Complex& operator-=(Complex& a, Complex b) { a = a - b; return a; }
inline Complex& operator*=(Complex& a, Complex b) { a = a * b; return a; }

inline Real norm(Complex a) { return a.re * a.re + a.im * a.im; }
inline Real abs(Complex a) { return sqrt(norm(a)); }

inline Complex scale(Complex a, double s) { return {a.re * Real(s), a.im * Real(s)}; }

}  // namespace maxmod::dd

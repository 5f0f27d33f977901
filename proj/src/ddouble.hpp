#pragma once

// Double-double arithmetic (unevaluated sum hi + lo, ~32 significant digits)
// built on error-free transforms. Only what the determinant grid needs.

#include <cmath>

namespace specrig::detail {

struct DD {
  double hi = 0.0;
  double lo = 0.0;

  DD() = default;
  DD(double h) : hi(h) {}  // NOLINT(google-explicit-constructor)
  DD(double h, double l) : hi(h), lo(l) {}
};

inline DD quick_two_sum(double a, double b) {
  const double s = a + b;
  return {s, b - (s - a)};
}

inline DD two_sum(double a, double b) {
  const double s = a + b;
  const double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD operator+(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  const DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
  const double p = a.hi * b.hi;
  double e = std::fma(a.hi, b.hi, -p);
  e += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p, e);
}

inline DD operator/(DD a, DD b) {
  const double q1 = a.hi / b.hi;
  DD r = a - DD(q1) * b;
  const double q2 = r.hi / b.hi;
  r = r - DD(q2) * b;
  const double q3 = r.hi / b.hi;
  return quick_two_sum(q1, q2) + DD(q3);
}

struct CDD {
  DD re;
  DD im;

  CDD() = default;
  CDD(DD r, DD i = DD()) : re(r), im(i) {}  // NOLINT(google-explicit-constructor)
};

inline CDD operator+(const CDD& a, const CDD& b) { return {a.re + b.re, a.im + b.im}; }
inline CDD operator-(const CDD& a, const CDD& b) { return {a.re - b.re, a.im - b.im}; }
inline CDD operator-(const CDD& a) { return {-a.re, -a.im}; }
inline CDD operator*(const CDD& a, const CDD& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
inline CDD operator*(const CDD& a, DD s) { return {a.re * s, a.im * s}; }
inline CDD operator/(const CDD& a, const CDD& b) {
  const DD d = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
}
inline CDD operator/(const CDD& a, DD s) { return {a.re / s, a.im / s}; }

// Cheap magnitude for pivoting.
inline double magnitude(const CDD& a) { return std::abs(a.re.hi) + std::abs(a.im.hi); }
inline bool is_zero(const CDD& a) { return a.re.hi == 0.0 && a.im.hi == 0.0; }

}  // namespace specrig::detail

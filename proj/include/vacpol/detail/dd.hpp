#pragma once
#include <cmath>

//! Double-double arithmetic: each value is an unevaluated sum hi + lo giving
//! roughly 32 significant digits. Used where a power series must be summed
//! through cancellation far larger than the result.

namespace vacpol::detail {

struct dd {
  double hi = 0.0;
  double lo = 0.0;
  constexpr dd() = default;
  constexpr dd(double h) : hi(h) {}
  constexpr dd(double h, double l) : hi(h), lo(l) {}
};

inline dd two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

//! requires |a| >= |b|
inline dd quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline dd two_prod(double a, double b) {
  double p = a * b;
  return {p, std::fma(a, b, -p)};
}

inline dd operator+(dd a, dd b) {
  dd s = two_sum(a.hi, b.hi);
  return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline dd operator-(dd a) { return {-a.hi, -a.lo}; }
inline dd operator-(dd a, dd b) { return a + (-b); }

inline dd operator*(dd a, dd b) {
  dd p = two_prod(a.hi, b.hi);
  return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline dd operator*(dd a, double b) {
  dd p = two_prod(a.hi, b);
  return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline dd operator/(dd a, dd b) {
  double q1 = a.hi / b.hi;
  dd r = a - b * q1;
  double q2 = r.hi / b.hi;
  r = r - b * q2;
  double q3 = r.hi / b.hi;
  return quick_two_sum(q1, q2) + dd(q3);
}

//! complex double-double
struct cdd {
  dd re, im;
};

inline cdd operator+(cdd a, cdd b) { return {a.re + b.re, a.im + b.im}; }
inline cdd operator-(cdd a, cdd b) { return {a.re - b.re, a.im - b.im}; }

inline cdd operator*(cdd a, cdd b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

inline cdd operator*(cdd a, dd b) { return {a.re * b, a.im * b}; }

inline cdd operator/(cdd a, cdd b) {
  dd den = b.re * b.re + b.im * b.im;
  cdd num = a * cdd{b.re, -b.im};
  return {num.re / den, num.im / den};
}

//! |a|^2 in working precision, for convergence tests
inline double abs2(cdd a) {
  return a.re.hi * a.re.hi + a.im.hi * a.im.hi;
}

} // namespace vacpol::detail

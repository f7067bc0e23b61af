// Double-double arithmetic: a value is the unevaluated sum hi + lo of two
// binary64 numbers with |lo| <= ulp(hi)/2, carrying ~106 significant bits.
// Everything downstream that touches the fine interval scales (tent
// half-widths near 1e-12, orbit indices up to ~8e15, Birkhoff walks of 1e8
// steps) runs on this type; plain binary64 drift would exceed those scales.
//
// Contract: round-to-nearest binary64 and no FMA contraction in any
// translation unit that includes this header (the build pins
// -ffp-contract=off). Index arguments must satisfy |i| <= 2^53 - 1.

#pragma once

#include <cassert>
#include <cmath>
#include <cstdint>
#include <cstdlib>

namespace spanlab {

// ── error-free transforms ──

// s + err == a + b exactly, s = fl(a + b).
inline double two_sum(double a, double b, double& err) {
  double s = a + b;
  double v = s - a;
  err = (a - (s - v)) + (b - v);
  return s;
}

// Same contract as two_sum; requires |a| >= |b| or a == 0.
inline double quick_two_sum(double a, double b, double& err) {
  double s = a + b;
  err = b - (s - a);
  return s;
}

// p + err == a * b exactly, p = fl(a * b). Dekker split, no FMA needed.
inline double two_prod(double a, double b, double& err) {
  constexpr double kSplitter = 134217729.0;  // 2^27 + 1
  double sa = kSplitter * a;
  double a_hi = sa - (sa - a);
  double a_lo = a - a_hi;
  double sb = kSplitter * b;
  double b_hi = sb - (sb - b);
  double b_lo = b - b_hi;
  double p = a * b;
  err = ((a_hi * b_hi - p) + a_hi * b_lo + a_lo * b_hi) + a_lo * b_lo;
  return p;
}

// ── Dd type ──

struct Dd {
  double hi = 0.0;
  double lo = 0.0;
};

inline Dd dd_from(double x) { return Dd{x, 0.0}; }

inline double to_double(const Dd& a) { return a.hi + a.lo; }

inline Dd dd_norm(double hi, double lo) {
  Dd r;
  r.hi = quick_two_sum(hi, lo, r.lo);
  return r;
}

// ── arithmetic ──

inline Dd operator+(const Dd& a, const Dd& b) {
  double e1, e2;
  double s = two_sum(a.hi, b.hi, e1);
  double t = two_sum(a.lo, b.lo, e2);
  e1 += t;
  s = quick_two_sum(s, e1, e1);
  e1 += e2;
  return dd_norm(s, e1);
}

inline Dd operator+(const Dd& a, double b) {
  double e;
  double s = two_sum(a.hi, b, e);
  e += a.lo;
  return dd_norm(s, e);
}

inline Dd operator-(const Dd& a) { return Dd{-a.hi, -a.lo}; }

inline Dd operator-(const Dd& a, const Dd& b) { return a + (-b); }

inline Dd operator-(const Dd& a, double b) { return a + (-b); }

inline Dd operator-(double a, const Dd& b) { return (-b) + a; }

inline Dd operator*(const Dd& a, const Dd& b) {
  double e;
  double p = two_prod(a.hi, b.hi, e);
  e += a.hi * b.lo + a.lo * b.hi;
  return dd_norm(p, e);
}

inline Dd operator*(const Dd& a, double b) {
  double e;
  double p = two_prod(a.hi, b, e);
  e += a.lo * b;
  return dd_norm(p, e);
}

inline Dd operator*(double a, const Dd& b) { return b * a; }

inline Dd operator/(const Dd& a, const Dd& b) {
  double q0 = a.hi / b.hi;
  Dd r = a - b * q0;
  double q1 = to_double(r) / b.hi;
  r = r - b * q1;
  double q2 = to_double(r) / b.hi;
  Dd q = dd_norm(q0, q1);
  return q + q2;
}

inline Dd operator/(const Dd& a, double b) { return a / dd_from(b); }

// ── comparisons (valid for normalized pairs) ──

inline bool operator<(const Dd& a, const Dd& b) {
  return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo);
}
inline bool operator>(const Dd& a, const Dd& b) { return b < a; }
inline bool operator<=(const Dd& a, const Dd& b) { return !(b < a); }
inline bool operator>=(const Dd& a, const Dd& b) { return !(a < b); }
inline bool operator==(const Dd& a, const Dd& b) {
  return a.hi == b.hi && a.lo == b.lo;
}
inline bool operator<(const Dd& a, double b) { return a < dd_from(b); }
inline bool operator>(const Dd& a, double b) { return a > dd_from(b); }

inline Dd dd_abs(const Dd& a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0) ? -a : a; }

inline bool dd_is_negative(const Dd& a) { return a.hi < 0.0 || (a.hi == 0.0 && a.lo < 0.0); }

// ── reduction mod 1 ──

// Centered representative of a mod 1, in [-1/2, 1/2). Requires |a.hi| <= 2^53,
// where x - nearbyint(x) is exact.
inline Dd dd_frac_centered(const Dd& a) {
  assert(std::fabs(a.hi) <= 9007199254740992.0);
  double n = std::nearbyint(a.hi);
  double e;
  double f = two_sum(a.hi - n, a.lo, e);
  Dd r = dd_norm(f, e);
  while (r.hi > 0.5 || (r.hi == 0.5 && r.lo >= 0.0)) r = r - 1.0;
  while (r.hi < -0.5 || (r.hi == -0.5 && r.lo < 0.0)) r = r + 1.0;
  return r;
}

// Representative of a mod 1 in [0, 1).
inline Dd dd_frac_unit(const Dd& a) {
  Dd r = dd_frac_centered(a);
  if (dd_is_negative(r)) r = r + 1.0;
  return r;
}

// frac_centered(i * a) without forming the full product in one Dd: both
// partial products i*a.hi and i*a.lo are reduced mod 1 before summation, so
// no significant bits are spent on the integer part. Absolute error is
// ~|i| * (representation error of a) + O(2^-106); with a correctly rounded
// Dd constant that is under 2e-17 even at |i| = 8e15.
inline Dd dd_frac_mul_i64(const Dd& a, std::int64_t i) {
  assert(std::llabs(i) <= 9007199254740991LL);
  double d = static_cast<double>(i);
  double pe, qe;
  double p = two_prod(d, a.hi, pe);
  double q = two_prod(d, a.lo, qe);
  double fp = p - std::nearbyint(p);
  double fq = q - std::nearbyint(q);
  Dd s = dd_norm(fp, 0.0) + Dd{fq, 0.0} + Dd{pe, 0.0} + Dd{qe, 0.0};
  return dd_frac_centered(s);
}

// ── golden rotation constant ──

// (sqrt(5) - 1) / 2, correctly rounded to a Dd pair.
inline Dd golden_alpha() {
  return Dd{0x1.3c6ef372fe950p-1, -0x1.f506319fcfd19p-55};
}

// Same constant computed from scratch: one Newton step for the root of
// x^2 + x - 1 starting from the binary64 seed, done in Dd arithmetic.
// Cross-checked against golden_alpha() in the unit tests.
inline Dd golden_alpha_newton() {
  double x0 = (std::sqrt(5.0) - 1.0) / 2.0;
  Dd x = dd_from(x0);
  for (int pass = 0; pass < 2; ++pass) {
    Dd f = x * x + x - 1.0;
    Dd fp = x * 2.0 + 1.0;
    x = x - f / fp;
  }
  return x;
}

}  // namespace spanlab

// Geometry of the circle T = R/Z and the 2-torus T^2. Points are stored as
// representatives in [0, 1); the metric is arc distance, and on T^2 the sum
// of the two coordinate arc distances. Plain binary64 versions serve the
// coarse covering work; Dd versions serve scales below 1e-11 where binary64
// cancellation would dominate.

#pragma once

#include <algorithm>
#include <cmath>

#include "spanlab/dd.hpp"

namespace spanlab {

// ── binary64 circle ──

// Representative of x mod 1 in [0, 1).
inline double circle_frac(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;  // rounding of x + 1 for tiny negative x
  return f;
}

// Signed centered difference a - b mod 1, in [-1/2, 1/2).
inline double circle_offset(double a, double b) {
  double f = circle_frac(a - b);
  if (f >= 0.5) f -= 1.0;
  return f;
}

// Arc distance on T, in [0, 1/2].
inline double circle_dist(double a, double b) {
  double f = circle_frac(a - b);
  return std::min(f, 1.0 - f);
}

// Arc distance on T^2 as the sum of coordinate arc distances, in [0, 1].
inline double torus2_dist(double x1, double y1, double x2, double y2) {
  return circle_dist(x1, x2) + circle_dist(y1, y2);
}

// ── Dd circle ──

// Signed centered difference a - b mod 1 at Dd precision.
inline Dd circle_offset_dd(const Dd& a, const Dd& b) {
  return dd_frac_centered(a - b);
}

// Arc distance on T at Dd precision, in [0, 1/2].
inline Dd circle_dist_dd(const Dd& a, const Dd& b) {
  Dd f = dd_abs(circle_offset_dd(a, b));
  // |frac_centered| <= 1/2 already; nothing to fold
  return f;
}

// Distance from a (mod 1) to the nearest integer, at Dd precision.
inline Dd circle_norm_dd(const Dd& a) { return dd_abs(dd_frac_centered(a)); }

}  // namespace spanlab

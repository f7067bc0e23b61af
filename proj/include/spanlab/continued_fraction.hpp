// Convergent data for the golden rotation number alpha = (sqrt(5) - 1) / 2,
// whose continued fraction is [0; 1, 1, 1, ...]. Denominators q_j and
// numerators p_j are consecutive Fibonacci numbers, and the signed remainders
//   v_j = q_j * alpha - p_j = (-1)^j * theta_j,   theta_j = alpha^(j+1)
// decay geometrically. theta_j is stored as a Dd power of alpha (relative
// error ~j * 2^-105), which is far more accurate at deep j than evaluating
// q_j * alpha directly.
//
// Tables stop at the largest q_j <= 2^53 - 1 (j = 77), the exactness limit
// for index-to-double conversion.

#pragma once

#include <cstdint>
#include <vector>

#include "spanlab/dd.hpp"

namespace spanlab {

class GoldenRotation {
 public:
  GoldenRotation();

  Dd value() const { return alpha_; }

  // number of stored convergents; valid j is [0, levels())
  int levels() const { return static_cast<int>(q_.size()); }

  std::int64_t q(int j) const { return q_[j]; }
  std::int64_t p(int j) const { return p_[j]; }

  // theta_j = |q_j * alpha - p_j| > 0, strictly decreasing in j
  Dd theta(int j) const { return theta_[j]; }

  // v_j = q_j * alpha - p_j, sign (-1)^j
  Dd v(int j) const { return v_[j]; }

  // largest j with q_j <= r, preferring the larger of the two j = 0, 1
  // entries (both have q = 1); r >= 1 required
  int level_for(std::int64_t r) const;

  // min over 1 <= i <= r of ||i * alpha||, exactly theta(level_for(r))
  Dd min_abs_rot(std::int64_t r) const;

  // frac(x0 + i * alpha) in [0, 1); |i| <= 2^53 - 1
  Dd orbit_point(const Dd& x0, std::int64_t i) const {
    return dd_frac_unit(x0 + dd_frac_mul_i64(alpha_, i));
  }

 private:
  Dd alpha_;
  std::vector<std::int64_t> q_;
  std::vector<std::int64_t> p_;
  std::vector<Dd> theta_;
  std::vector<Dd> v_;
};

}  // namespace spanlab

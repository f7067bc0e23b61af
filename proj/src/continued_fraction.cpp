#include "spanlab/continued_fraction.hpp"

#include <cassert>

namespace spanlab {

GoldenRotation::GoldenRotation() : alpha_(golden_alpha()) {
  constexpr std::int64_t kIndexCap = 9007199254740991LL;  // 2^53 - 1
  // p_0/q_0 = 0/1, p_1/q_1 = 1/1, then the Fibonacci recurrence
  std::int64_t q_prev = 1, q_cur = 1;
  std::int64_t p_prev = 0, p_cur = 1;
  Dd theta_prev = alpha_;           // theta_0 = alpha
  Dd theta_cur = alpha_ * alpha_;   // theta_1 = alpha^2 = 1 - alpha
  q_.push_back(q_prev);
  p_.push_back(p_prev);
  theta_.push_back(theta_prev);
  v_.push_back(theta_prev);  // v_0 = +alpha
  q_.push_back(q_cur);
  p_.push_back(p_cur);
  theta_.push_back(theta_cur);
  v_.push_back(-theta_cur);  // v_1 = alpha - 1
  int j = 1;
  while (q_cur + q_prev <= kIndexCap) {
    std::int64_t q_next = q_cur + q_prev;
    std::int64_t p_next = p_cur + p_prev;
    Dd theta_next = theta_cur * alpha_;
    ++j;
    q_prev = q_cur;
    q_cur = q_next;
    p_prev = p_cur;
    p_cur = p_next;
    theta_prev = theta_cur;
    theta_cur = theta_next;
    q_.push_back(q_cur);
    p_.push_back(p_cur);
    theta_.push_back(theta_cur);
    v_.push_back(j % 2 == 0 ? theta_cur : -theta_cur);
  }
}

int GoldenRotation::level_for(std::int64_t r) const {
  assert(r >= 1);
  if (r == 1) return 1;  // q_0 = q_1 = 1; the later level has smaller theta
  // binary search over the strictly increasing tail q_1, q_2, ...
  int lo = 1, hi = levels() - 1;
  if (q_[hi] <= r) return hi;
  while (hi - lo > 1) {
    int mid = (lo + hi) / 2;
    if (q_[mid] <= r) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

Dd GoldenRotation::min_abs_rot(std::int64_t r) const {
  return theta_[level_for(r)];
}

}  // namespace spanlab

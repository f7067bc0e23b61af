// Orbit separation profiles. For a pair of trajectories with step distances
// e_0, e_1, ... the three profiles at horizon n >= 1 are
//   d_max(n) = max_{0 <= i < n} e_i          (worst step)
//   d_bar(n) = (1/n) sum_{0 <= i < n} e_i    (mean step)
//   d_hat(n) = max_{1 <= k <= n} d_bar(k)    (peak running mean)
// Always d_max >= d_hat >= d_bar; d_max and d_hat are nondecreasing in n,
// d_bar is not. Everything is accumulated in a single left-to-right pass.
//
// Determinism contract: the running sum is Kahan-compensated and the k-th
// mean is formed as sum / k immediately after the k-th push. Any module that
// stores d_bar values and later reconstructs d_hat must reuse this
// accumulator so the reconstruction is equal bit for bit.

#pragma once

#include <algorithm>
#include <cassert>
#include <cstdint>

namespace spanlab {

struct OrbitMetrics {
  double d_max = 0.0;
  double d_hat = 0.0;
  double d_bar = 0.0;
};

class MetricAccumulator {
 public:
  void push(double e) {
    n_ += 1;
    // Kahan step: keeps the mean's rounding error O(eps), independent of n
    double y = e - comp_;
    double t = sum_ + y;
    comp_ = (t - sum_) - y;
    sum_ = t;
    max_ = std::max(max_, e);
    bar_ = sum_ / static_cast<double>(n_);
    hat_ = std::max(hat_, bar_);
  }

  std::int64_t count() const { return n_; }

  OrbitMetrics value() const {
    assert(n_ >= 1);
    return OrbitMetrics{max_, hat_, bar_};
  }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
  double max_ = 0.0;
  double hat_ = 0.0;
  double bar_ = 0.0;
  std::int64_t n_ = 0;
};

// Profiles after exactly n steps; dist_at(i) is the step-i distance.
template <class DistFn>
OrbitMetrics orbit_metrics(std::int64_t n, DistFn&& dist_at) {
  assert(n >= 1);
  MetricAccumulator acc;
  for (std::int64_t i = 0; i < n; ++i) acc.push(dist_at(i));
  return acc.value();
}

// Profiles at each horizon in ns (strictly increasing, all >= 1), evaluated
// in one pass; emit(idx, metrics) is called once per horizon in order.
template <class DistFn, class EmitFn>
void metric_profile(const std::int64_t* ns, int count, DistFn&& dist_at,
                    EmitFn&& emit) {
  MetricAccumulator acc;
  std::int64_t i = 0;
  for (int k = 0; k < count; ++k) {
    assert(ns[k] >= 1 && (k == 0 || ns[k] > ns[k - 1]));
    while (i < ns[k]) {
      acc.push(dist_at(i));
      ++i;
    }
    emit(k, acc.value());
  }
}

}  // namespace spanlab

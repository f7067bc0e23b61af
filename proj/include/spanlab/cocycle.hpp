// Tent cascade over the ladder: h = h_1 + ... + h_depth, where layer k
// places a tent of half-width gamma_k and height 1/N_k at each interval
// center i*alpha, signed +1 for i < N_k and -1 for the upper half. Tents at
// one level never overlap (certified disjointness radius), so along an orbit
// every visit to a tent row opens a "chain": 2N_k consecutive steps reading
// the same apex weight, + for N_k steps then - for N_k steps. Birkhoff sums
// therefore collapse to O(number of visits) closed forms regardless of the
// horizon, which is what makes 1e10-step fiber values computable.

#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "spanlab/schedule.hpp"
#include "spanlab/system.hpp"

namespace spanlab {

// ── the cascade ──

class CocycleFunction {
 public:
  // depth = number of layers summed; 0 <= depth <= sched.depth(). The
  // schedule must outlive this object. depth 0 is the h == 0 control.
  CocycleFunction(const ParameterSchedule& sched, int depth);
  explicit CocycleFunction(const ParameterSchedule& sched)
      : CocycleFunction(sched, sched.depth()) {}

  const ParameterSchedule& schedule() const { return *sched_; }
  int depth() const { return depth_; }
  // upper estimate of the dropped tail sum_{k > depth} h_k
  double tail_bound() const;

  // h_k(x): apex weight at the nearest level-k center, zero beyond gamma_k
  double eval_level(int k, const Dd& x) const;
  // h(x) = sum of the layers, accumulated in layer order
  double eval(const Dd& x) const;

 private:
  const ParameterSchedule* sched_;
  int depth_;
};

// convenience wrapper for plain-double callers
double h_eval(const CocycleFunction& f, double x);

// ── chain walker ──

// one tent-row visit: steps r..r+2N_k-1 read +value then -value
struct ChainContact {
  int level = 0;
  std::int64_t r = 0;    // first step of the chain (may be negative)
  double value = 0.0;    // (1 - |offset|/gamma_k) / N_k, >= 0
};

// level-k chains intersecting the step window [0, n), ascending by r
std::vector<ChainContact> level_contacts(const CocycleFunction& f, int k,
                                         const Dd& x, std::int64_t n);

// H_n^{h_k}(x) via the chain closed form
double birkhoff_sum_level(const CocycleFunction& f, int k, const Dd& x,
                          std::int64_t n);
// H_n^{h}(x) over all layers
double birkhoff_sum(const CocycleFunction& f, const Dd& x, std::int64_t n);
// direct O(n) summation of an arbitrary circle function along the orbit
double birkhoff_sum_fn(const std::function<double(double)>& g, double x,
                       std::int64_t n);

// ── escape times ──

struct EscapeResult {
  std::int64_t n = 0;  // first i >= 0 with R^i x outside the union
  Dd x;                // R^n x
};

// escape from E_1 u ... u E_{level-1}; requires 2 <= level <= depth+1.
// Certified to land within M_level - 1 steps; throws if that fails.
EscapeResult first_escape(const ParameterSchedule& sched, const Dd& x,
                          int level);

// ── skew products driven by the cascade ──

// (x, y) -> (x + alpha, y + h(x)) on T^2
class CascadeSkewSystem final : public System {
 public:
  CascadeSkewSystem(const ParameterSchedule& sched, int depth);
  explicit CascadeSkewSystem(const ParameterSchedule& sched)
      : CascadeSkewSystem(sched, sched.depth()) {}

  SpaceTag tag() const override { return SpaceTag::torus2; }
  int dim() const override { return 2; }
  std::string describe() const override;
  void step(double* state) const override;
  double dist(const double* a, const double* b) const override;
  // drift-free: x_i by exact index arithmetic, y_i by the chain walker
  void orbit(const double* start, std::int64_t n, double* out) const override;

  const ParameterSchedule& schedule() const { return sched_; }
  CocycleFunction cocycle() const { return CocycleFunction(sched_, depth_); }

 private:
  ParameterSchedule sched_;
  int depth_;
};

// (x, y) -> (x + alpha, y + s*h(x) + beta) on T^2; s nonzero
class TbetaSystem final : public System {
 public:
  TbetaSystem(const ParameterSchedule& sched, int depth, int s, double beta);

  SpaceTag tag() const override { return SpaceTag::torus2; }
  int dim() const override { return 2; }
  std::string describe() const override;
  void step(double* state) const override;
  double dist(const double* a, const double* b) const override;
  void orbit(const double* start, std::int64_t n, double* out) const override;

  const ParameterSchedule& schedule() const { return sched_; }
  CocycleFunction cocycle() const { return CocycleFunction(sched_, depth_); }
  int s() const { return s_; }
  double beta() const { return beta_; }

 private:
  ParameterSchedule sched_;
  int depth_;
  int s_;
  double beta_;
};

// single step of the beta-shifted map at full schedule depth; throws on s = 0
void tbeta_step(const ParameterSchedule& sched, int s, double beta,
                double* state);

// diagnostic for the irrationality obligation on beta: smallest ||q beta||
// over the denominators q <= 1e6 of beta's own continued fraction, so a
// (numerically) rational beta reports ~0. Callers decide what to reject.
double beta_independence_defect(double beta);

}  // namespace spanlab

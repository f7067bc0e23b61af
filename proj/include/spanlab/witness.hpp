// Behavioral certificates for the cascade skew products. Two residual
// checkers probe the whole-chain cancellation identity (Birkhoff sums of one
// tent layer vanish between compliant endpoints) and the smallness of layer
// sums along close returns; three witness procedures exhibit sensitive pairs
// and averaging defects with explicit bounds and declared slack; an orbit
// probe scans for dense-orbit evidence. Every procedure is deterministic
// given (schedule, level, inputs): index scans run in a fixed order and the
// fiber arithmetic is the chain walker's.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "spanlab/cocycle.hpp"
#include "spanlab/schedule.hpp"

namespace spanlab {

// raised when a checker's hypothesis fails: the instance is invalid, and
// nothing about the identity under test is implied
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct WitnessReport {
  std::string tag;  // which property the procedure probes
  int level = 0;    // ladder level k
  // named inputs and observables, in procedure order
  std::vector<std::pair<std::string, double>> values;
  double achieved = 0.0;
  double bound_lo = 0.0;  // pass gate: achieved in [bound_lo - slack,
  double bound_hi = 0.0;  //                         bound_hi + slack]
  double slack = 0.0;     // declared tolerance: truncation tail + fp
  bool precondition_met = true;  // false: diagnostic only, pass is a
                                 // bracket check, not an assertion
  bool pass = false;
  std::string note;

  // lookup into values; throws std::out_of_range when absent
  double value(const std::string& name) const;
};

// |H_m^{h_level}(x)|. Hypothesis (enforced): x and R^m x each lie outside
// the level set or within delta_level of 0. Under it the sum vanishes
// exactly; callers assert residual <= 1e-9 * m.
double zero_sum_residual(const ParameterSchedule& sched, const Dd& x,
                         std::int64_t m, int level);

// ||H_m^{h_j}(x)|| on the circle for a close return: ||m alpha|| < l_k, and
// x, R^m x in the same level-j interval, 1 <= j <= k - 1. Callers assert
// the value < 1/k^2.
double close_return_sum(const ParameterSchedule& sched, const Dd& x,
                        std::int64_t m, int k, int j);

// sensitive-pair witness at level k: offset x' = delta_k + l_k/2, first
// index n_1 ascending in [0, M_k - 1] and n_2 descending from N_k/2 - 1
// with all four orbit points of 0 and x' outside the union of level sets
// 1..k-1; reports the fiber drift over [n_1, n_2) and the torus separation
// x' + drift it produces. depth < 0 means the full ladder; depth 0 is the
// isometry control (zero drift).
WitnessReport nonequicontinuity_witness(const ParameterSchedule& sched, int k,
                                        int depth = -1);

// averaging-defect witness: Birkhoff average of
// f = 1 on T x [0, 1/2), -1 on T x [1/2, 1) over the first N_k/2 steps from
// (0, y0), fiber accumulated in Dd (the boundary margin is 1/N_k, below
// binary64 drift at this horizon). depth 0 freezes the fiber: the
// product-rotation control, average exactly 1 from y0 = 1/4.
WitnessReport nonunique_ergodicity_witness(const ParameterSchedule& sched,
                                           int k, int depth = -1,
                                           double y0 = 0.0);

// sensitive-pair witness for the beta-shifted product: same pair procedure
// with the n_2 window [10^{k-p-2} M_k - M_k, 10^{k-p-2} M_k - 1], where
// 10^p <= |s| < 10^{p+1}; the common beta shift cancels in fiber
// differences. The asserted separation regime needs k > p + 10, beyond any
// desk-scale ladder, so at small k the report is diagnostic
// (precondition_met = false) and pass records a two-sided bracket check on
// |s| * drift instead.
WitnessReport tbeta_witness(const ParameterSchedule& sched, int k, int s,
                            double beta);

// dense-orbit probe: first n in [0, budget] with
// dist(T^n start, target) < eps. Walks System::orbit in blocks, so
// drift-free orbit implementations are probed drift-free.
struct ProbeResult {
  bool hit = false;
  std::int64_t n = 0;   // hitting index, or argmin of dist when exhausted
  double dist = 0.0;    // distance at n
};
ProbeResult minimality_probe(const System& sys, const double* start,
                             const double* target, double eps,
                             std::int64_t budget);

}  // namespace spanlab

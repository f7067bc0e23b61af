// Parameter ladder for the nested tent cascade over the golden rotation.
// Level k carries integers M_k, N_k = 10^k * M_k and reals delta_k (half-width
// of the orbit-neighborhood intervals [i*alpha +- delta_k], 0 <= i < 2N_k),
// gamma_k < delta_k (tent half-width), and l_k (minimum endpoint separation,
// feeding the next level's gap threshold). The ladder is deterministic given
// (depth, eta, magnitude cap): every choice is a closed-form function of the
// convergent tables, so rebuilding reproduces it bit for bit.
//
// A depth-K ladder internally constructs level K+1 through delta_{K+1}
// (gamma_K's gap range and the endpoint-collision audit need it) and then
// stops: no l_{K+1}, no gamma_{K+1}.
//
// Op-order contract (binary64, -ffp-contract=off): tests assert the built
// constants bit for bit, so the expression shapes in the .cpp are load-bearing
// and must not be algebraically rearranged.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "spanlab/continued_fraction.hpp"
#include "spanlab/dd.hpp"
#include "spanlab/diophantine.hpp"

namespace spanlab {

// largest ladder integer admitted before the build fails loudly; N_{K+1} for
// K = 2 is ~1.5e15, so the working default sits above that but below the
// 2^53 - 1 exact-index ceiling enforced separately
inline constexpr std::int64_t kDefaultMagnitudeCap = 10000000000000000LL;  // 1e16

struct LevelParams {
  int k = 0;
  std::int64_t M = 0;
  std::int64_t N = 0;  // 10^k * M
  double delta = 0.0;
  double gamma = 0.0;  // 0 on the internal top level
  double l = 0.0;      // 0 on the internal top level

  // audit trail, certified post hoc
  std::int64_t thr_gap = 0;    // k >= 2: least n with max_gap(n) < l_{k-1}
  std::int64_t thr_count = 0;  // k >= 2: least n passing the counting bound
  int delta_nudges = 0;        // endpoint-collision shrink steps taken
  double gamma_raw = 0.0;      // 0.45 * gap value before cap and floor
  bool gamma_floored = false;  // raw below 1e-13: gamma = 0.9 * delta instead
  std::int64_t gamma_disjoint_radius = 0;  // tents [i*a +- gamma] disjoint
                                           // while index spreads stay <= this
};

class ScheduleError : public std::runtime_error {
 public:
  ScheduleError(int level, const std::string& constraint)
      : std::runtime_error("ladder infeasible at level " +
                           std::to_string(level) + ": " + constraint),
        level_(level),
        constraint_(constraint) {}
  int level() const { return level_; }
  const std::string& constraint() const { return constraint_; }

 private:
  int level_;
  std::string constraint_;
};

class ParameterSchedule {
 public:
  // deterministic construction; throws ScheduleError when an integer would
  // exceed magnitude_cap (or the 2^53 - 1 exact-index ceiling)
  static ParameterSchedule build(int depth, double eta = 0.01,
                                 std::int64_t magnitude_cap = kDefaultMagnitudeCap);

  int depth() const { return depth_; }
  double eta() const { return eta_; }
  std::int64_t magnitude_cap() const { return cap_; }
  const GoldenRotation& rotation() const { return rot_; }

  // k in [1, depth]
  const LevelParams& level(int k) const { return levels_.at(k - 1); }
  // level depth+1: M, N, delta and audit fields only
  const LevelParams& internal_top() const { return levels_.back(); }
  // all depth+1 built levels
  const std::vector<LevelParams>& levels() const { return levels_; }

  // nearest level-j interval center i*alpha, i in [0, 2N_j): index and
  // signed offset of x from it
  NearestHit nearest_center(int j, const Dd& x) const;
  // ||x - i*alpha|| <= delta_j for some i in [0, 2N_j)
  bool in_level_set(int j, const Dd& x) const;
  // member of the union of level sets 1..j_hi
  bool in_union_set(int j_hi, const Dd& x) const;

  // plain-text serialization; fields in hex floats, bit-exact round-trip
  std::string serialize() const;
  static ParameterSchedule parse(const std::string& text);

 private:
  ParameterSchedule() = default;

  GoldenRotation rot_;
  int depth_ = 0;
  double eta_ = 0.0;
  std::int64_t cap_ = 0;
  std::vector<LevelParams> levels_;  // size depth_ + 1
};

// ── post-hoc certification ──

struct CheckLine {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct ScheduleCertificate {
  bool pass = false;
  std::vector<CheckLine> lines;
  std::string summary() const;
};

// re-verifies every ladder invariant by independent queries: seed values,
// N = 10^k M, interval budgets, pairwise disjointness, tent disjointness,
// endpoint separations, gap and counting thresholds, minimality of each M,
// and the endpoint-collision audit
ScheduleCertificate certify_schedule(const ParameterSchedule& sched);

}  // namespace spanlab

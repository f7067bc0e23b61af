// Spanning-number estimation over finite samples. Greedy covers give upper
// bounds, greedy separated subsets give packing lower bounds, and the pair
// brackets the exact minimum (asserted against brute force on small
// instances). Orbit metrics come from cached orbits, one pass per pair
// serving every requested horizon; on difference-invariant systems over
// uniform circle grids the pair matrix collapses to the grid's difference
// classes and the cover runs on circulant ball translates instead.

#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "spanlab/sampling.hpp"
#include "spanlab/system.hpp"

namespace spanlab {

enum class MetricKind { bowen, maxmean, mean };

const char* metric_kind_name(MetricKind kind);  // "bowen" | "maxmean" | "mean"

class CoveringError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// symmetric distance between sample points by index
using PairDist = std::function<double(std::size_t, std::size_t)>;

struct SpanEstimate {
  std::int64_t n = 1;
  double eps = 0.0;
  std::int64_t greedy_count = 0;
  std::int64_t packing_lb = 0;
  std::vector<std::uint32_t> centers;  // selection order, pairwise distinct
  double covered_fraction = 0.0;
};

// cover of the whole sample by closed eps-balls centered at sample points,
// chosen by maximal residual coverage with ties to the lowest index;
// packing_lb is the greedy separated-subset size at radius 2 eps, which
// never exceeds the exact minimum cover at radius eps
SpanEstimate greedy_span(const SampleSet& sample, const PairDist& dist,
                         double eps);

// size of the separated subset grown in index order: a point is kept when
// it lies strictly more than eps from every point kept before it
std::int64_t packing_number(const SampleSet& sample, const PairDist& dist,
                            double eps);

struct ProfileRow {
  MetricKind metric;
  std::int64_t n;
  double eps;
  SpanEstimate estimate;
  double wall_ms;  // 0 unless timing was requested, keeping artifacts stable
};

struct ComplexityProfile {
  std::string system;
  std::string sample;
  std::vector<ProfileRow> rows;  // metric kind, then n ascending, then eps
};

struct ProfileOptions {
  std::int64_t budget_bytes = std::int64_t{2} << 30;  // orbit cache ceiling
  bool record_timing = false;
};

// one orbit pass per sample point, one metric pass per pair reused across
// every horizon in n_list and every eps; n_list must be strictly
// increasing. The multi-kind overload shares the orbit and pair passes
// across kinds.
ComplexityProfile span_profile(const System& sys, const SampleSet& sample,
                               const std::vector<MetricKind>& kinds,
                               const std::vector<std::int64_t>& n_list,
                               const std::vector<double>& eps_list,
                               const ProfileOptions& opt = {});
ComplexityProfile span_profile(const System& sys, const SampleSet& sample,
                               MetricKind kind,
                               const std::vector<std::int64_t>& n_list,
                               const std::vector<double>& eps_list,
                               const ProfileOptions& opt = {});

// greedy cover of the sample stopped as soon as the covered fraction
// exceeds 1 - eps; the sample stands in for the invariant measure, so it
// must hold at least 10 / eps points. packing_lb is the trivial bound 1
// (the stopped cover does not dominate a full-sample packing).
SpanEstimate measure_span(const System& sys, const SampleSet& sampler,
                          MetricKind kind, std::int64_t n, double eps,
                          const ProfileOptions& opt = {});

enum class Verdict { bounded, growing, inconclusive };

const char* verdict_name(Verdict v);

// bounded: every (metric, eps) group is constant over the largest half of
// its n-grid; growing: every group is strictly increasing over its last
// four points; anything else is inconclusive. Groups need >= 4 distinct n.
Verdict boundedness_verdict(const ComplexityProfile& profile);

}  // namespace spanlab

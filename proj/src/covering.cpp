#include "spanlab/covering.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>

#include "spanlab/circle.hpp"

namespace spanlab {

namespace {

constexpr int kMaxCheckpoints = 64;
constexpr std::size_t kDenseLimit = 20000;  // balls are m*m bits

// ── bitset helpers ──

using Words = std::vector<std::uint64_t>;

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

void set_bit(Words& w, std::size_t i) { w[i >> 6] |= 1ull << (i & 63); }

bool test_bit(const Words& w, std::size_t i) {
  return (w[i >> 6] >> (i & 63)) & 1u;
}

std::int64_t residual_gain(const std::uint64_t* ball,
                           const std::uint64_t* covered, std::size_t nw) {
  std::int64_t g = 0;
  for (std::size_t k = 0; k < nw; ++k)
    g += __builtin_popcountll(ball[k] & ~covered[k]);
  return g;
}

// ── dense greedy cover and greedy packing over a distance oracle ──

// stop_above: the cover is complete once covered count exceeds this value
// (m - 1/2 for a full cover, (1 - eps) m for a measure cover)
SpanEstimate greedy_core(std::size_t m, const PairDist& dist, double eps,
                         double stop_above) {
  if (m == 0) throw CoveringError("greedy_span: empty sample");
  if (!(eps > 0.0)) throw CoveringError("greedy_span: eps must be > 0");
  if (m > kDenseLimit)
    throw CoveringError(
        "greedy_span: sample too large for the dense path; use a "
        "difference-invariant system on a uniform circle grid or shrink it");
  const std::size_t nw = word_count(m);
  Words balls(nw * m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    balls[i * nw + (i >> 6)] |= 1ull << (i & 63);
    for (std::size_t j = i + 1; j < m; ++j) {
      if (dist(i, j) <= eps) {
        balls[i * nw + (j >> 6)] |= 1ull << (j & 63);
        balls[j * nw + (i >> 6)] |= 1ull << (i & 63);
      }
    }
  }
  Words covered(nw, 0);
  std::int64_t cnt = 0;
  SpanEstimate est;
  est.eps = eps;
  while (!(static_cast<double>(cnt) > stop_above)) {
    std::size_t best = m;
    std::int64_t best_gain = 0;
    for (std::size_t i = 0; i < m; ++i) {
      const std::int64_t g = residual_gain(&balls[i * nw], covered.data(), nw);
      if (g > best_gain) {
        best_gain = g;
        best = i;
      }
    }
    // every uncovered point covers itself, so progress is guaranteed
    est.centers.push_back(static_cast<std::uint32_t>(best));
    for (std::size_t k = 0; k < nw; ++k) covered[k] |= balls[best * nw + k];
    cnt += best_gain;
  }
  est.greedy_count = static_cast<std::int64_t>(est.centers.size());
  est.covered_fraction = static_cast<double>(cnt) / static_cast<double>(m);
  return est;
}

std::int64_t packing_core(std::size_t m, const PairDist& dist, double eps) {
  if (m == 0) throw CoveringError("packing_number: empty sample");
  if (!(eps > 0.0)) throw CoveringError("packing_number: eps must be > 0");
  std::vector<std::uint32_t> kept;
  for (std::size_t i = 0; i < m; ++i) {
    bool separated = true;
    for (std::uint32_t c : kept) {
      if (dist(c, i) <= eps) {
        separated = false;
        break;
      }
    }
    if (separated) kept.push_back(static_cast<std::uint32_t>(i));
  }
  return static_cast<std::int64_t>(kept.size());
}

// ── pair metric pass ──

// All three horizon profiles of one ordered pair in a single left-to-right
// walk, emitted at each checkpoint in ns. The running state is the
// MetricAccumulator recurrence verbatim (same Kahan updates, same division
// forming each mean), so stored values equal accumulator output bit for
// bit; the per-step division is skipped unless the peak running mean is
// actually wanted.
template <class BaseDist>
void pair_metrics(const double* oa, const double* ob, int dim,
                  const std::int64_t* ns, int nn, bool want_hat, BaseDist bd,
                  double* out_max, double* out_hat, double* out_bar) {
  double sum = 0.0, comp = 0.0, mx = 0.0, hat = 0.0;
  std::int64_t t = 0;
  for (int k = 0; k < nn; ++k) {
    for (; t < ns[k]; ++t) {
      const double e = bd(oa + t * dim, ob + t * dim);
      const double y = e - comp;
      const double s = sum + y;
      comp = (s - sum) - y;
      sum = s;
      mx = std::max(mx, e);
      if (want_hat) hat = std::max(hat, sum / static_cast<double>(t + 1));
    }
    out_max[k] = mx;
    out_hat[k] = hat;
    out_bar[k] = sum / static_cast<double>(ns[k]);
  }
}

// Fast base-distance bodies for the two common tags; both expressions are
// the same ones the systems' dist() overrides evaluate, so the cached
// matrices match a direct step-and-measure loop bit for bit.
struct CircleBase {
  double operator()(const double* a, const double* b) const {
    return circle_dist(a[0], b[0]);
  }
};
struct Torus2Base {
  double operator()(const double* a, const double* b) const {
    return torus2_dist(a[0], a[1], b[0], b[1]);
  }
};
struct SystemBase {
  const System* sys;
  double operator()(const double* a, const double* b) const {
    return sys->dist(a, b);
  }
};

template <class Fn>
void with_base_dist(const System& sys, Fn&& fn) {
  switch (sys.tag()) {
    case SpaceTag::circle:
      fn(CircleBase{});
      break;
    case SpaceTag::torus2:
      fn(Torus2Base{});
      break;
    default:
      fn(SystemBase{&sys});
      break;
  }
}

// ── orbit cache ──

struct OrbitCache {
  std::size_t m = 0;
  std::int64_t n = 0;
  int dim = 1;
  std::vector<double> data;  // m rows of n*dim doubles

  const double* row(std::size_t i) const {
    return data.data() +
           i * static_cast<std::size_t>(n) * static_cast<std::size_t>(dim);
  }
};

OrbitCache build_cache(const System& sys, const SampleSet& sample,
                       std::int64_t n_max, std::int64_t budget_bytes) {
  OrbitCache cache;
  cache.m = sample.count();
  cache.n = n_max;
  cache.dim = sys.dim();
  const double bytes = static_cast<double>(cache.m) *
                       static_cast<double>(n_max) * cache.dim * 8.0;
  if (bytes > static_cast<double>(budget_bytes)) {
    char msg[160];
    std::snprintf(msg, sizeof msg,
                  "orbit cache needs %.0f bytes, budget is %lld; shrink the "
                  "sample or the horizon list",
                  bytes, static_cast<long long>(budget_bytes));
    throw CoveringError(msg);
  }
  cache.data.resize(cache.m * static_cast<std::size_t>(n_max) *
                    static_cast<std::size_t>(cache.dim));
  for (std::size_t i = 0; i < cache.m; ++i)
    sys.orbit(sample.point(i), n_max, const_cast<double*>(cache.row(i)));
  return cache;
}

// per requested kind, one m*m matrix per checkpoint
struct MetricMatrices {
  std::size_t m = 0;
  std::vector<std::vector<double>> mx, hat, bar;  // [checkpoint][i*m+j]
};

MetricMatrices build_matrices(const System& sys, const OrbitCache& cache,
                              const std::vector<std::int64_t>& ns,
                              bool want_max, bool want_hat, bool want_bar) {
  MetricMatrices mm;
  mm.m = cache.m;
  const int nn = static_cast<int>(ns.size());
  auto alloc = [&](std::vector<std::vector<double>>& dst) {
    dst.assign(nn, std::vector<double>(cache.m * cache.m, 0.0));
  };
  if (want_max) alloc(mm.mx);
  if (want_hat) alloc(mm.hat);
  if (want_bar) alloc(mm.bar);
  with_base_dist(sys, [&](auto bd) {
    double vmax[kMaxCheckpoints], vhat[kMaxCheckpoints], vbar[kMaxCheckpoints];
    for (std::size_t i = 0; i < cache.m; ++i) {
      for (std::size_t j = i + 1; j < cache.m; ++j) {
        pair_metrics(cache.row(i), cache.row(j), cache.dim, ns.data(), nn,
                     want_hat, bd, vmax, vhat, vbar);
        for (int k = 0; k < nn; ++k) {
          if (want_max) {
            mm.mx[k][i * cache.m + j] = vmax[k];
            mm.mx[k][j * cache.m + i] = vmax[k];
          }
          if (want_hat) {
            mm.hat[k][i * cache.m + j] = vhat[k];
            mm.hat[k][j * cache.m + i] = vhat[k];
          }
          if (want_bar) {
            mm.bar[k][i * cache.m + j] = vbar[k];
            mm.bar[k][j * cache.m + i] = vbar[k];
          }
        }
      }
    }
  });
  return mm;
}

// ── circulant path ──
//
// On a difference-invariant system over the uniform grid {k/P}, the pair
// distance at any horizon depends only on (i - j) mod P, so one profile per
// difference class k (orbit of k/P against the orbit of 0) replaces the
// full matrix and every ball is a translate of the class set S.

bool circulant_eligible(const System& sys, const SampleSet& sample) {
  return sys.difference_invariant() && sys.dim() == 1 && sample.dim == 1 &&
         sample.kind == SampleKind::uniform_grid &&
         sample.grid_resolution == static_cast<std::int64_t>(sample.count());
}

struct CirculantProfiles {
  std::int64_t P = 0;
  std::vector<std::vector<double>> mx, hat, bar;  // [checkpoint][k]
};

CirculantProfiles build_circulant(const System& sys, std::int64_t P,
                                  const std::vector<std::int64_t>& ns,
                                  bool want_max, bool want_hat,
                                  bool want_bar) {
  CirculantProfiles cp;
  cp.P = P;
  const int nn = static_cast<int>(ns.size());
  auto alloc = [&](std::vector<std::vector<double>>& dst) {
    dst.assign(nn, std::vector<double>(static_cast<std::size_t>(P), 0.0));
  };
  if (want_max) alloc(cp.mx);
  if (want_hat) alloc(cp.hat);
  if (want_bar) alloc(cp.bar);
  const std::int64_t n_max = ns.back();
  std::vector<double> orb0(static_cast<std::size_t>(n_max));
  std::vector<double> orbk(static_cast<std::size_t>(n_max));
  const double zero = 0.0;
  sys.orbit(&zero, n_max, orb0.data());
  with_base_dist(sys, [&](auto bd) {
    double vmax[kMaxCheckpoints], vhat[kMaxCheckpoints], vbar[kMaxCheckpoints];
    for (std::int64_t k = 0; k < P; ++k) {
      const double xk = static_cast<double>(k) / static_cast<double>(P);
      sys.orbit(&xk, n_max, orbk.data());
      pair_metrics(orbk.data(), orb0.data(), 1, ns.data(), nn, want_hat, bd,
                   vmax, vhat, vbar);
      for (int c = 0; c < nn; ++c) {
        if (want_max) cp.mx[c][static_cast<std::size_t>(k)] = vmax[c];
        if (want_hat) cp.hat[c][static_cast<std::size_t>(k)] = vhat[c];
        if (want_bar) cp.bar[c][static_cast<std::size_t>(k)] = vbar[c];
      }
    }
  });
  return cp;
}

// greedy cover of Z_P by translates of S = {k : f(k) <= eps}; candidate
// gains are kept incrementally, so the whole run costs O(P (|S| + rounds))
SpanEstimate greedy_circulant(std::int64_t P, const std::vector<double>& f,
                              double eps) {
  if (!(eps > 0.0)) throw CoveringError("greedy_span: eps must be > 0");
  std::vector<std::int64_t> S;
  for (std::int64_t k = 0; k < P; ++k)
    if (f[static_cast<std::size_t>(k)] <= eps) S.push_back(k);
  // f(0) = 0, so S is never empty and every point covers itself
  std::vector<std::int32_t> gain(static_cast<std::size_t>(P),
                                 static_cast<std::int32_t>(S.size()));
  Words covered(word_count(static_cast<std::size_t>(P)), 0);
  SpanEstimate est;
  est.eps = eps;
  std::int64_t cnt = 0;
  while (cnt < P) {
    std::int64_t best = 0;
    std::int32_t best_gain = -1;
    for (std::int64_t c = 0; c < P; ++c) {
      if (gain[static_cast<std::size_t>(c)] > best_gain) {
        best_gain = gain[static_cast<std::size_t>(c)];
        best = c;
      }
    }
    est.centers.push_back(static_cast<std::uint32_t>(best));
    for (std::int64_t s : S) {
      std::int64_t p = best + s;
      if (p >= P) p -= P;
      if (test_bit(covered, static_cast<std::size_t>(p))) continue;
      set_bit(covered, static_cast<std::size_t>(p));
      ++cnt;
      for (std::int64_t s2 : S) {
        std::int64_t q = p - s2;
        if (q < 0) q += P;
        --gain[static_cast<std::size_t>(q)];
      }
    }
  }
  est.greedy_count = static_cast<std::int64_t>(est.centers.size());
  est.covered_fraction = 1.0;
  return est;
}

std::int64_t packing_circulant(std::int64_t P, const std::vector<double>& f,
                               double eps) {
  std::vector<std::int64_t> S;
  for (std::int64_t k = 0; k < P; ++k)
    if (f[static_cast<std::size_t>(k)] <= eps) S.push_back(k);
  Words blocked(word_count(static_cast<std::size_t>(P)), 0);
  std::int64_t cnt = 0;
  for (std::int64_t c = 0; c < P; ++c) {
    if (test_bit(blocked, static_cast<std::size_t>(c))) continue;
    ++cnt;
    for (std::int64_t s : S) {
      std::int64_t p = c + s;
      if (p >= P) p -= P;
      set_bit(blocked, static_cast<std::size_t>(p));
    }
  }
  return cnt;
}

// ── shared validation ──

void validate_grid(const std::vector<std::int64_t>& n_list,
                   const std::vector<double>& eps_list) {
  if (n_list.empty()) throw CoveringError("span_profile: empty horizon list");
  for (std::size_t i = 0; i < n_list.size(); ++i) {
    if (n_list[i] < 1)
      throw CoveringError("span_profile: horizons must be >= 1");
    if (i > 0 && n_list[i] <= n_list[i - 1])
      throw CoveringError("span_profile: horizons must be strictly increasing");
  }
  if (static_cast<int>(n_list.size()) > kMaxCheckpoints)
    throw CoveringError("span_profile: too many horizons");
  if (eps_list.empty()) throw CoveringError("span_profile: empty eps list");
  for (double e : eps_list)
    if (!(e > 0.0)) throw CoveringError("span_profile: eps must be > 0");
}

double now_ms() {
  return std::chrono::duration<double, std::milli>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

}  // namespace

const char* metric_kind_name(MetricKind kind) {
  switch (kind) {
    case MetricKind::bowen:   return "bowen";
    case MetricKind::maxmean: return "maxmean";
    case MetricKind::mean:    return "mean";
  }
  return "?";
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::bounded:      return "bounded";
    case Verdict::growing:      return "growing";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "?";
}

SpanEstimate greedy_span(const SampleSet& sample, const PairDist& dist,
                         double eps) {
  const std::size_t m = sample.count();
  SpanEstimate est =
      greedy_core(m, dist, eps, static_cast<double>(m) - 0.5);
  est.packing_lb = packing_core(m, dist, 2.0 * eps);
  est.n = 1;
  return est;
}

std::int64_t packing_number(const SampleSet& sample, const PairDist& dist,
                            double eps) {
  return packing_core(sample.count(), dist, eps);
}

ComplexityProfile span_profile(const System& sys, const SampleSet& sample,
                               const std::vector<MetricKind>& kinds,
                               const std::vector<std::int64_t>& n_list,
                               const std::vector<double>& eps_list,
                               const ProfileOptions& opt) {
  if (kinds.empty()) throw CoveringError("span_profile: no metric kinds");
  validate_grid(n_list, eps_list);
  if (sample.count() == 0) throw CoveringError("span_profile: empty sample");
  const bool want_max =
      std::find(kinds.begin(), kinds.end(), MetricKind::bowen) != kinds.end();
  const bool want_hat = std::find(kinds.begin(), kinds.end(),
                                  MetricKind::maxmean) != kinds.end();
  const bool want_bar =
      std::find(kinds.begin(), kinds.end(), MetricKind::mean) != kinds.end();

  ComplexityProfile profile;
  profile.system = sys.describe();
  profile.sample = sample.descriptor;

  if (circulant_eligible(sys, sample)) {
    const std::int64_t P = sample.grid_resolution;
    CirculantProfiles cp =
        build_circulant(sys, P, n_list, want_max, want_hat, want_bar);
    for (MetricKind kind : kinds) {
      const auto& rows = kind == MetricKind::bowen  ? cp.mx
                         : kind == MetricKind::mean ? cp.bar
                                                    : cp.hat;
      for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
        for (double eps : eps_list) {
          const double t0 = opt.record_timing ? now_ms() : 0.0;
          SpanEstimate est = greedy_circulant(P, rows[ni], eps);
          est.n = n_list[ni];
          est.packing_lb = packing_circulant(P, rows[ni], 2.0 * eps);
          const double t1 = opt.record_timing ? now_ms() : 0.0;
          profile.rows.push_back(
              ProfileRow{kind, n_list[ni], eps, std::move(est), t1 - t0});
        }
      }
    }
    return profile;
  }

  OrbitCache cache = build_cache(sys, sample, n_list.back(), opt.budget_bytes);
  MetricMatrices mm =
      build_matrices(sys, cache, n_list, want_max, want_hat, want_bar);
  const std::size_t m = cache.m;
  for (MetricKind kind : kinds) {
    const auto& rows = kind == MetricKind::bowen  ? mm.mx
                       : kind == MetricKind::mean ? mm.bar
                                                  : mm.hat;
    for (std::size_t ni = 0; ni < n_list.size(); ++ni) {
      const double* matrix = rows[ni].data();
      PairDist dist = [matrix, m](std::size_t i, std::size_t j) {
        return matrix[i * m + j];
      };
      for (double eps : eps_list) {
        const double t0 = opt.record_timing ? now_ms() : 0.0;
        SpanEstimate est =
            greedy_core(m, dist, eps, static_cast<double>(m) - 0.5);
        est.n = n_list[ni];
        est.packing_lb = packing_core(m, dist, 2.0 * eps);
        const double t1 = opt.record_timing ? now_ms() : 0.0;
        profile.rows.push_back(
            ProfileRow{kind, n_list[ni], eps, std::move(est), t1 - t0});
      }
    }
  }
  return profile;
}

ComplexityProfile span_profile(const System& sys, const SampleSet& sample,
                               MetricKind kind,
                               const std::vector<std::int64_t>& n_list,
                               const std::vector<double>& eps_list,
                               const ProfileOptions& opt) {
  return span_profile(sys, sample, std::vector<MetricKind>{kind}, n_list,
                      eps_list, opt);
}

SpanEstimate measure_span(const System& sys, const SampleSet& sampler,
                          MetricKind kind, std::int64_t n, double eps,
                          const ProfileOptions& opt) {
  if (n < 1) throw CoveringError("measure_span: n must be >= 1");
  if (!(eps > 0.0)) throw CoveringError("measure_span: eps must be > 0");
  const std::size_t m = sampler.count();
  if (static_cast<double>(m) < 10.0 / eps)
    throw CoveringError(
        "measure_span: sample too small for eps (need at least 10/eps points)");
  OrbitCache cache = build_cache(sys, sampler, n, opt.budget_bytes);
  std::vector<std::int64_t> ns{n};
  MetricMatrices mm =
      build_matrices(sys, cache, ns, kind == MetricKind::bowen,
                     kind == MetricKind::maxmean, kind == MetricKind::mean);
  const auto& rows = kind == MetricKind::bowen  ? mm.mx
                     : kind == MetricKind::mean ? mm.bar
                                                : mm.hat;
  const double* matrix = rows[0].data();
  PairDist dist = [matrix, m](std::size_t i, std::size_t j) {
    return matrix[i * m + j];
  };
  SpanEstimate est =
      greedy_core(m, dist, eps, (1.0 - eps) * static_cast<double>(m));
  est.n = n;
  est.packing_lb = 1;  // a stopped cover does not bound a full-sample packing
  return est;
}

Verdict boundedness_verdict(const ComplexityProfile& profile) {
  if (profile.rows.empty())
    throw CoveringError("boundedness_verdict: empty profile");
  std::map<std::pair<int, double>, std::map<std::int64_t, std::int64_t>>
      groups;
  for (const ProfileRow& row : profile.rows) {
    auto& group = groups[{static_cast<int>(row.metric), row.eps}];
    if (!group.emplace(row.n, row.estimate.greedy_count).second)
      throw CoveringError("boundedness_verdict: duplicate (metric, n, eps) row");
  }
  bool all_flat = true;
  bool all_rising = true;
  for (const auto& [key, group] : groups) {
    if (group.size() < 4)
      throw CoveringError(
          "boundedness_verdict: need at least 4 distinct horizons per eps");
    std::vector<std::int64_t> counts;
    counts.reserve(group.size());
    for (const auto& [n, c] : group) counts.push_back(c);
    const std::size_t s = counts.size();
    const std::size_t half = (s + 1) / 2;
    for (std::size_t i = s - half + 1; i < s; ++i)
      if (counts[i] != counts[s - half]) all_flat = false;
    for (std::size_t i = s - 3; i < s; ++i)
      if (counts[i] <= counts[i - 1]) all_rising = false;
  }
  if (all_flat) return Verdict::bounded;
  if (all_rising) return Verdict::growing;
  return Verdict::inconclusive;
}

}  // namespace spanlab

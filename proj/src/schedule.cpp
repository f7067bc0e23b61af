// Ladder construction. Level k in order: M_k (gap + counting thresholds,
// rounded up to a convergent denominator), N_k = 10^k M_k, delta_k (0.9 of
// the binding gap/budget term, then an endpoint-collision audit against all
// prior endpoint sets), and once level k exists, gamma_{k-1} and l_{k-1}'s
// successor l_k. Every real is a binary64 expression whose exact shape is
// part of the determinism contract (tests pin the results bit for bit).

#include "spanlab/schedule.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <sstream>

namespace spanlab {

namespace {

constexpr std::int64_t kMaxExactIndex = 9007199254740991LL;  // 2^53 - 1
constexpr double kCollisionEps = 1e-22;  // endpoint-collision predicate
constexpr double kGammaFloor = 1e-13;    // raw tent width below this: floor

// min over r in [lo, hi], r != 0 excluded only when drop_zero, of
// ||r * alpha + u||
Dd min_shifted_gap(const GoldenRotation& rot, const Dd& u, std::int64_t lo,
                   std::int64_t hi) {
  NearestHit h = nearest_orbit_point(rot, u, lo, hi, dd_from(0.0));
  return h.dist;
}

// smallest endpoint-pair distance between the level-k interval endpoints
// {i a +- delta_k : 0 <= i < 2 N_k} and the level-p endpoints, scanning
// r = i' - i in [-(2 N_k - 1), 2 N_prev - 1] as the build audit does
Dd endpoint_cross_min(const GoldenRotation& rot, double delta_p,
                      double delta_k, std::int64_t n_k, std::int64_t n_prev) {
  Dd best;
  bool first = true;
  for (int s1 : {1, -1}) {
    for (int s2 : {1, -1}) {
      double e;
      double hi = two_sum(s1 * delta_p, s2 * delta_k, e);
      Dd u = dd_norm(hi, e);  // exact two-double sum
      Dd d = min_shifted_gap(rot, u, -(2 * n_k - 1), 2 * n_prev - 1);
      if (first || d < best) {
        best = d;
        first = false;
      }
    }
  }
  return best;
}

bool endpoint_collision(const GoldenRotation& rot,
                        const std::vector<LevelParams>& prior, double delta_k,
                        std::int64_t n_k, std::int64_t n_prev) {
  for (const LevelParams& p : prior) {
    Dd d = endpoint_cross_min(rot, p.delta, delta_k, n_k, n_prev);
    if (to_double(d) < kCollisionEps) return true;
  }
  return false;
}

// l_k = min over endpoint pairs of the union set at levels <= k, together
// with gamma_i / (2 k^2) for i < k
double compute_l(const GoldenRotation& rot,
                 const std::vector<LevelParams>& lv, int k) {
  const LevelParams& top = lv[k - 1];
  double best = 2.0 * top.delta;  // same-interval pair at the finest level
  for (int p = 1; p <= k; ++p) {
    double dp = lv[p - 1].delta;
    if (p < k && 2.0 * dp < best) best = 2.0 * dp;
    // within-level cross pairs: u in {0, +-2 delta_p}
    for (double u : {0.0, 2.0 * dp, -2.0 * dp}) {
      Dd d = min_shifted_gap(rot, dd_from(u), 1, 2 * lv[p - 1].N - 1);
      best = std::min(best, to_double(d));
    }
    // across-level pairs p' < p
    for (int pp = 1; pp < p; ++pp) {
      Dd d = endpoint_cross_min(rot, lv[pp - 1].delta, dp, lv[p - 1].N,
                                lv[pp - 1].N);
      best = std::min(best, to_double(d));
    }
  }
  for (int i = 1; i < k; ++i)
    best = std::min(best, lv[i - 1].gamma / static_cast<double>(2 * k * k));
  return best;
}

std::int64_t pow10_i64(int k) {
  std::int64_t p = 1;
  for (int t = 0; t < k; ++t) p *= 10;
  return p;
}

std::string fmt_hex(double x) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%a", x);
  return buf;
}

}  // namespace

// ── construction ──

ParameterSchedule ParameterSchedule::build(int depth, double eta,
                                           std::int64_t magnitude_cap) {
  if (depth < 1) throw ScheduleError(0, "depth must be >= 1");
  if (!(eta > 0.0 && eta < 1.0)) throw ScheduleError(0, "eta must be in (0,1)");

  ParameterSchedule s;
  s.depth_ = depth;
  s.eta_ = eta;
  s.cap_ = magnitude_cap;
  const GoldenRotation& rot = s.rot_;

  for (int k = 1; k <= depth + 1; ++k) {
    LevelParams lv;
    lv.k = k;

    if (k == 1) {
      lv.M = 10;
    } else {
      const LevelParams& prev = s.levels_[k - 2];
      // gap threshold: least convergent denominator whose point set already
      // partitions the circle into gaps below l_{k-1}
      int jj = 2;
      while (!(rot.theta(jj - 2) < dd_from(prev.l))) {
        ++jj;
        if (jj >= rot.levels())
          throw ScheduleError(k, "gap threshold beyond convergent tables");
      }
      lv.thr_gap = rot.q(jj);

      // counting threshold: least n with n * |E_{k-1}| + 2 * (interval
      // count) < n * eta / 2^{k-1}
      const double len = 4.0 * static_cast<double>(prev.N) * prev.delta;
      const std::int64_t cnt = 2 * prev.N;
      const double target = eta / static_cast<double>(1LL << (k - 1));
      if (!(target > len))
        throw ScheduleError(k, "interval budget of the previous level exceeds "
                               "the counting target");
      auto pred = [&](std::int64_t n) {
        return static_cast<double>(n) * len + 2.0 * static_cast<double>(cnt) <
               static_cast<double>(n) * target;
      };
      std::int64_t thr_cnt = static_cast<std::int64_t>(std::floor(
                                 2.0 * static_cast<double>(cnt) /
                                 (target - len))) +
                             1;
      while (!pred(thr_cnt)) ++thr_cnt;
      while (thr_cnt > 1 && pred(thr_cnt - 1)) --thr_cnt;
      lv.thr_count = thr_cnt;

      std::int64_t thr = std::max({lv.thr_gap, lv.thr_count, prev.N + 1});
      int j = 0;
      while (rot.q(j) < thr) {
        ++j;
        if (j >= rot.levels())
          throw ScheduleError(k, "M exceeds the convergent tables");
      }
      lv.M = rot.q(j);
    }

    if (lv.M > magnitude_cap)
      throw ScheduleError(
          k, "M = " + std::to_string(lv.M) + " exceeds the magnitude cap " +
                 std::to_string(magnitude_cap));
    const std::int64_t p10 = pow10_i64(k);
    if (lv.M > kMaxExactIndex / p10)
      throw ScheduleError(k, "N = 10^k M exceeds the exact-index ceiling");
    lv.N = p10 * lv.M;
    if (lv.N > magnitude_cap)
      throw ScheduleError(
          k, "N = " + std::to_string(lv.N) + " exceeds the magnitude cap " +
                 std::to_string(magnitude_cap));
    if (k >= 2 && 4 * lv.N > kMaxExactIndex - 2 * s.levels_[k - 2].N)
      throw ScheduleError(k, "gap-query span 4N_k + 2N_{k-1} exceeds the "
                             "exact-index ceiling");

    // delta_k: 0.9 of the binding term, then the endpoint-collision audit
    const int jlev = rot.level_for(2 * lv.N + 1);
    const double half = 0.5 * to_double(rot.theta(jlev));
    const double capterm =
        eta / static_cast<double>((1LL << (k + 2)) * lv.N);
    double delta = 0.9 * std::min(half, capterm);
    int nudges = 0;
    if (k >= 2) {
      while (endpoint_collision(rot, s.levels_, delta, lv.N,
                                s.levels_[k - 2].N)) {
        delta = delta * (1.0 - 1e-3);
        ++nudges;
        if (nudges > 100000)
          throw ScheduleError(k, "endpoint-collision audit does not settle");
      }
    }
    lv.delta = delta;
    lv.delta_nudges = nudges;
    s.levels_.push_back(lv);

    if (k >= 2) {
      // gamma_{k-1}: 0.45 of the gap over index spreads up to
      // 4 N_k + 2 N_{k-1}, capped at 0.9 delta_{k-1}; a raw value below the
      // floor means binary64 consumers could not resolve the tents, so the
      // width is pinned to 0.9 delta_{k-1} and the disjointness radius is
      // recorded instead of the full-range guarantee
      LevelParams& pl = s.levels_[k - 2];
      const int jg = rot.level_for(4 * lv.N + 2 * pl.N);
      const double raw = 0.45 * to_double(rot.theta(jg));
      const double capg = 0.9 * pl.delta;
      pl.gamma_raw = raw;
      if (raw < kGammaFloor) {
        pl.gamma = capg;
        pl.gamma_floored = true;
      } else {
        pl.gamma = std::min(raw, capg);
      }
      int jr = 0;
      while (rot.theta(jr) > dd_from(2.0 * pl.gamma)) {
        ++jr;
        if (jr >= rot.levels()) break;
      }
      pl.gamma_disjoint_radius = rot.q(jr) - 1;

      // l_k needs gamma_{k-1}, so it finalizes here; the internal top level
      // never gets one
      if (k <= depth) {
        LevelParams& cur = s.levels_[k - 1];
        cur.l = compute_l(rot, s.levels_, k);
      }
    } else {
      // level 1: no prior endpoint sets, l_1 from its own pairs
      LevelParams& cur = s.levels_[0];
      cur.l = compute_l(rot, s.levels_, 1);
    }
  }

  return s;
}

// ── membership queries ──

NearestHit ParameterSchedule::nearest_center(int j, const Dd& x) const {
  const LevelParams& lv = level(j);
  return nearest_orbit_point(rot_, dd_from(0.0), 0, 2 * lv.N - 1, x);
}

bool ParameterSchedule::in_level_set(int j, const Dd& x) const {
  return nearest_center(j, x).dist <= dd_from(level(j).delta);
}

bool ParameterSchedule::in_union_set(int j_hi, const Dd& x) const {
  for (int j = 1; j <= j_hi; ++j)
    if (in_level_set(j, x)) return true;
  return false;
}

// ── serialization ──

std::string ParameterSchedule::serialize() const {
  std::ostringstream os;
  os << "tent-ladder v1\n";
  os << "eta " << fmt_hex(eta_) << "\n";
  os << "depth " << depth_ << "\n";
  os << "cap " << cap_ << "\n";
  for (const LevelParams& lv : levels_) {
    os << "level k " << lv.k << " M " << lv.M << " N " << lv.N << " delta "
       << fmt_hex(lv.delta) << " gamma " << fmt_hex(lv.gamma) << " l "
       << fmt_hex(lv.l) << " thr_gap " << lv.thr_gap << " thr_count "
       << lv.thr_count << " nudges " << lv.delta_nudges << " gamma_raw "
       << fmt_hex(lv.gamma_raw) << " floored " << (lv.gamma_floored ? 1 : 0)
       << " radius " << lv.gamma_disjoint_radius << "\n";
  }
  os << "end tent-ladder\n";
  return os.str();
}

ParameterSchedule ParameterSchedule::parse(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  auto expect = [&](const char* want) {
    if (!(is >> tok) || tok != want)
      throw std::runtime_error(std::string("ladder parse: expected '") + want +
                               "', got '" + tok + "'");
  };
  auto read_hex = [&]() {
    if (!(is >> tok)) throw std::runtime_error("ladder parse: missing number");
    return std::strtod(tok.c_str(), nullptr);
  };

  ParameterSchedule s;
  expect("tent-ladder");
  expect("v1");
  expect("eta");
  s.eta_ = read_hex();
  expect("depth");
  is >> s.depth_;
  expect("cap");
  is >> s.cap_;
  for (int i = 0; i < s.depth_ + 1; ++i) {
    LevelParams lv;
    expect("level");
    expect("k");
    is >> lv.k;
    expect("M");
    is >> lv.M;
    expect("N");
    is >> lv.N;
    expect("delta");
    lv.delta = read_hex();
    expect("gamma");
    lv.gamma = read_hex();
    expect("l");
    lv.l = read_hex();
    expect("thr_gap");
    is >> lv.thr_gap;
    expect("thr_count");
    is >> lv.thr_count;
    expect("nudges");
    is >> lv.delta_nudges;
    expect("gamma_raw");
    lv.gamma_raw = read_hex();
    expect("floored");
    int f = 0;
    is >> f;
    lv.gamma_floored = (f != 0);
    expect("radius");
    is >> lv.gamma_disjoint_radius;
    if (lv.k != i + 1 || lv.N != pow10_i64(lv.k) * lv.M)
      throw std::runtime_error("ladder parse: inconsistent level record");
    s.levels_.push_back(lv);
  }
  expect("end");
  expect("tent-ladder");
  return s;
}

// ── certification ──

namespace {

void add(std::vector<CheckLine>& lines, const std::string& name, bool pass,
         const std::string& detail) {
  lines.push_back(CheckLine{name, pass, detail});
}

std::string g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace

std::string ScheduleCertificate::summary() const {
  std::ostringstream os;
  for (const CheckLine& c : lines)
    os << (c.pass ? "[ok]   " : "[FAIL] ") << c.name << ": " << c.detail
       << "\n";
  os << (pass ? "ladder certificate: all checks pass\n"
              : "ladder certificate: FAILURES present\n");
  return os.str();
}

ScheduleCertificate certify_schedule(const ParameterSchedule& s) {
  const GoldenRotation& rot = s.rotation();
  ScheduleCertificate cert;
  auto& L = cert.lines;

  const LevelParams& l1 = s.level(1);
  add(L, "seed-values", l1.M == 10 && l1.N == 100,
      "M_1 = " + std::to_string(l1.M) + ", N_1 = " + std::to_string(l1.N));

  for (const LevelParams& lv : s.levels()) {
    const int k = lv.k;
    const bool internal = (k == s.depth() + 1);
    const std::string ks = std::to_string(k);

    add(L, "power-scaling " + ks, lv.N == pow10_i64(k) * lv.M,
        "N = " + std::to_string(lv.N) + " vs 10^k M");

    const double budget = s.eta() / static_cast<double>(1LL << k);
    const double len = 4.0 * static_cast<double>(lv.N) * lv.delta;
    add(L, "interval-budget " + ks, len < budget,
        "4 N delta = " + g17(len) + " < " + g17(budget));

    const Dd gap = rot.theta(rot.level_for(2 * lv.N + 1));
    add(L, "interval-disjoint " + ks, dd_from(2.0 * lv.delta) < gap,
        "2 delta = " + g17(2.0 * lv.delta) + " < gap " + g17(to_double(gap)));

    if (!internal) {
      add(L, "tent-below-interval " + ks,
          lv.gamma > 0.0 && lv.gamma < lv.delta,
          "gamma = " + g17(lv.gamma) + " < delta = " + g17(lv.delta));

      const LevelParams& up = s.levels()[k];  // level k+1 exists for k<=depth
      const std::int64_t full_span = 4 * up.N + 2 * lv.N;
      if (!lv.gamma_floored) {
        const Dd tg = rot.theta(rot.level_for(full_span));
        add(L, "tent-disjoint " + ks, dd_from(2.0 * lv.gamma) < tg,
            "2 gamma < gap " + g17(to_double(tg)) + " over spreads <= " +
                std::to_string(full_span));
      } else {
        const std::int64_t r = lv.gamma_disjoint_radius;
        const Dd tg = rot.theta(rot.level_for(r));
        const std::int64_t used =
            4 * lv.N + (k >= 2 ? 2 * s.levels()[k - 2].N : 0);
        add(L, "tent-disjoint-radius " + ks,
            dd_from(2.0 * lv.gamma) < tg && r >= used,
            "floored width: disjoint for spreads <= " + std::to_string(r) +
                ", in-ladder uses <= " + std::to_string(used));
      }

      // l_k: full recompute over endpoint pairs and tent-width quotas
      std::vector<LevelParams> pre(s.levels().begin(),
                                   s.levels().begin() + k);
      const double cand = compute_l(rot, pre, k);
      add(L, "endpoint-separation " + ks, lv.l == cand && lv.l > 0.0,
          "l = " + g17(lv.l));
    }

    if (k >= 2) {
      const LevelParams& prev = s.levels()[k - 2];
      Dd mg = max_gap(rot, lv.M);
      add(L, "gap-certificate " + ks, mg < dd_from(prev.l),
          "max_gap(M) = " + g17(to_double(mg)) + " < l_prev = " +
              g17(prev.l));
      Dd mg_before = max_gap(rot, lv.thr_gap - 1);
      add(L, "gap-threshold-minimal " + ks,
          max_gap(rot, lv.thr_gap) < dd_from(prev.l) &&
              !(mg_before < dd_from(prev.l)),
          "thr_gap = " + std::to_string(lv.thr_gap));

      const double plen = 4.0 * static_cast<double>(prev.N) * prev.delta;
      const double ptarget =
          s.eta() / static_cast<double>(1LL << (k - 1));
      auto pred = [&](std::int64_t n) {
        return static_cast<double>(n) * plen +
                   2.0 * static_cast<double>(2 * prev.N) <
               static_cast<double>(n) * ptarget;
      };
      add(L, "count-threshold-minimal " + ks,
          pred(lv.thr_count) && !(lv.thr_count > 1 && pred(lv.thr_count - 1)),
          "thr_count = " + std::to_string(lv.thr_count));
      add(L, "count-certificate " + ks, pred(lv.M),
          "M = " + std::to_string(lv.M) + " passes the counting bound");

      const std::int64_t thr =
          std::max({lv.thr_gap, lv.thr_count, prev.N + 1});
      int j = 0;
      while (rot.q(j) < thr) ++j;
      add(L, "M-minimal-denominator " + ks, lv.M == rot.q(j),
          "M = " + std::to_string(lv.M) + ", least denominator >= " +
              std::to_string(thr));

      double worst = 1.0;
      for (int p = 1; p < k; ++p) {
        Dd d = endpoint_cross_min(rot, s.levels()[p - 1].delta, lv.delta,
                                  lv.N, prev.N);
        worst = std::min(worst, to_double(d));
      }
      add(L, "collision-audit " + ks,
          worst >= kCollisionEps && lv.delta_nudges == 0,
          "min endpoint distance " + g17(worst) + ", nudges " +
              std::to_string(lv.delta_nudges));
    }
  }

  const LevelParams& top = s.internal_top();
  add(L, "exact-index-ceiling",
      4 * top.N + 2 * s.level(s.depth()).N <= kMaxExactIndex,
      "4 N_top + 2 N_depth = " +
          std::to_string(4 * top.N + 2 * s.level(s.depth()).N));

  cert.pass = true;
  for (const CheckLine& c : L) cert.pass = cert.pass && c.pass;
  return cert;
}

}  // namespace spanlab

// Cascade evaluation and the chain walker. Layer values are computed from
// exact Dd offsets and a fixed binary64 expression shape; chain closed
// forms reproduce direct summation because one tent-row visit pins the
// apex weight for the whole 2N_k-step chain (level-k tents are disjoint
// out to the certified radius, so chains at one level never overlap).

#include "spanlab/cocycle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace spanlab {

// ── the cascade ──

CocycleFunction::CocycleFunction(const ParameterSchedule& sched, int depth)
    : sched_(&sched), depth_(depth) {
  if (depth < 0 || depth > sched.depth())
    throw std::invalid_argument("cocycle depth must lie in [0, ladder depth]");
}

double CocycleFunction::tail_bound() const {
  double p = 1.0;
  for (int t = 0; t < depth_; ++t) p *= 10.0;
  return 1.0 / (9.0 * p);
}

double CocycleFunction::eval_level(int k, const Dd& x) const {
  const LevelParams& lv = sched_->level(k);
  NearestHit h = sched_->nearest_center(k, x);
  if (!(h.dist <= dd_from(lv.gamma))) return 0.0;
  const double v = (1.0 - to_double(h.dist) / lv.gamma) /
                   static_cast<double>(lv.N);
  return h.index < lv.N ? v : -v;
}

double CocycleFunction::eval(const Dd& x) const {
  double acc = 0.0;
  for (int k = 1; k <= depth_; ++k) acc += eval_level(k, x);
  return acc;
}

double h_eval(const CocycleFunction& f, double x) {
  return f.eval(dd_from(x));
}

// ── chain walker ──

std::vector<ChainContact> level_contacts(const CocycleFunction& f, int k,
                                         const Dd& x, std::int64_t n) {
  std::vector<ChainContact> out;
  if (n <= 0) return out;
  const LevelParams& lv = f.schedule().level(k);
  const GoldenRotation& rot = f.schedule().rotation();
  const std::vector<std::int64_t> hits =
      enumerate_hits(rot, x, -(2 * lv.N - 1), n - 1, dd_from(0.0),
                     dd_from(lv.gamma));
  out.reserve(hits.size());
  for (std::int64_t r : hits) {
    const Dd off = dd_frac_centered(rot.orbit_point(x, r));
    const double v = (1.0 - to_double(dd_abs(off)) / lv.gamma) /
                     static_cast<double>(lv.N);
    out.push_back(ChainContact{k, r, v});
  }
  return out;
}

namespace {

std::int64_t span_overlap(std::int64_t a, std::int64_t b, std::int64_t lo,
                          std::int64_t hi) {
  const std::int64_t m = std::max(a, lo);
  const std::int64_t h = std::min(b, hi);
  return h > m ? h - m : 0;
}

}  // namespace

double birkhoff_sum_level(const CocycleFunction& f, int k, const Dd& x,
                          std::int64_t n) {
  if (n < 0) throw std::invalid_argument("birkhoff_sum: n must be >= 0");
  if (n == 0) return 0.0;
  const std::int64_t N = f.schedule().level(k).N;
  Dd acc = dd_from(0.0);
  for (const ChainContact& c : level_contacts(f, k, x, n)) {
    const std::int64_t plus = span_overlap(c.r, c.r + N, 0, n);
    const std::int64_t minus = span_overlap(c.r + N, c.r + 2 * N, 0, n);
    if (plus != minus)
      acc = acc + dd_from(c.value * static_cast<double>(plus - minus));
  }
  return to_double(acc);
}

double birkhoff_sum(const CocycleFunction& f, const Dd& x, std::int64_t n) {
  double acc = 0.0;
  for (int k = 1; k <= f.depth(); ++k) acc += birkhoff_sum_level(f, k, x, n);
  return acc;
}

double birkhoff_sum_fn(const std::function<double(double)>& g, double x,
                       std::int64_t n) {
  if (n < 0) throw std::invalid_argument("birkhoff_sum: n must be >= 0");
  const Dd alpha = golden_alpha();
  Dd pos = dd_frac_unit(dd_from(x));
  double sum = 0.0, comp = 0.0;  // Kahan
  for (std::int64_t i = 0; i < n; ++i) {
    const double term = g(to_double(pos)) - comp;
    const double next = sum + term;
    comp = (next - sum) - term;
    sum = next;
    pos = dd_frac_unit(pos + alpha);
  }
  return sum;
}

// ── escape times ──

EscapeResult first_escape(const ParameterSchedule& sched, const Dd& x,
                          int level) {
  if (level < 2 || level > sched.depth() + 1)
    throw std::invalid_argument("first_escape: level must lie in [2, depth+1]");
  const GoldenRotation& rot = sched.rotation();
  const std::int64_t bound = sched.levels()[level - 1].M;  // M_level
  std::int64_t i = 0;
  while (i < bound) {
    std::int64_t next = i;
    for (int j = 1; j <= level - 1; ++j) {
      const LevelParams& lv = sched.level(j);
      NearestHit h =
          nearest_orbit_point(rot, x, i - 2 * lv.N + 1, i, dd_from(0.0));
      if (h.dist <= dd_from(lv.delta))
        next = std::max(next, h.index + 2 * lv.N);
    }
    if (next == i) return EscapeResult{i, rot.orbit_point(x, i)};
    i = next;
  }
  throw std::logic_error(
      "first_escape: no escape within the certified bound M_level - 1");
}

// ── skew products ──

namespace {

// per-level cursor over a sorted chain list; reports the increment h_k
// contributes at step j, advancing as chains expire
struct ChainCursor {
  const std::vector<ChainContact>* chains = nullptr;
  std::int64_t N = 0;
  std::size_t idx = 0;

  double increment(std::int64_t j) {
    while (idx < chains->size() && (*chains)[idx].r + 2 * N <= j) ++idx;
    if (idx >= chains->size()) return 0.0;
    const ChainContact& c = (*chains)[idx];
    if (j < c.r) return 0.0;
    return j < c.r + N ? c.value : -c.value;
  }
};

// shared fiber walk: writes out[i] = (x_i, y_i) with
// y_i = frac(y_0 + scale * H_i + i * shift)
void walk_orbit(const ParameterSchedule& sched, int depth, double scale,
                double shift, const double* start, std::int64_t n,
                double* out) {
  if (n <= 0) return;
  out[0] = start[0];
  out[1] = start[1];
  if (n == 1) return;

  CocycleFunction f(sched, depth);
  Dd x = dd_frac_unit(dd_from(start[0]));
  Dd y = dd_frac_unit(dd_from(start[1]));
  const Dd alpha = sched.rotation().value();
  const Dd shift_dd = dd_from(shift);

  std::vector<std::vector<ChainContact>> chains(depth + 1);
  std::vector<ChainCursor> cursors(depth + 1);
  for (int k = 1; k <= depth; ++k) {
    chains[k] = level_contacts(f, k, x, n - 1);
    cursors[k] = ChainCursor{&chains[k], sched.level(k).N, 0};
  }

  for (std::int64_t j = 0; j + 1 < n; ++j) {
    double inc = 0.0;
    for (int k = 1; k <= depth; ++k) inc += cursors[k].increment(j);
    y = dd_frac_unit(y + dd_from(scale * inc) + shift_dd);
    x = dd_frac_unit(x + alpha);
    out[2 * (j + 1)] = to_double(x);
    out[2 * (j + 1) + 1] = to_double(y);
  }
}

}  // namespace

CascadeSkewSystem::CascadeSkewSystem(const ParameterSchedule& sched, int depth)
    : sched_(sched), depth_(depth) {
  if (depth < 0 || depth > sched.depth())
    throw std::invalid_argument("cascade depth must lie in [0, ladder depth]");
}

std::string CascadeSkewSystem::describe() const {
  std::ostringstream os;
  os << "tent-cascade skew product on T^2 (depth " << depth_ << ")";
  return os.str();
}

void CascadeSkewSystem::step(double* state) const {
  CocycleFunction f(sched_, depth_);
  const double hv = f.eval(dd_from(state[0]));
  state[0] = circle_frac(state[0] + to_double(sched_.rotation().value()));
  state[1] = circle_frac(state[1] + hv);
}

double CascadeSkewSystem::dist(const double* a, const double* b) const {
  return torus2_dist(a[0], a[1], b[0], b[1]);
}

void CascadeSkewSystem::orbit(const double* start, std::int64_t n,
                              double* out) const {
  walk_orbit(sched_, depth_, 1.0, 0.0, start, n, out);
}

TbetaSystem::TbetaSystem(const ParameterSchedule& sched, int depth, int s,
                         double beta)
    : sched_(sched), depth_(depth), s_(s), beta_(beta) {
  if (depth < 0 || depth > sched.depth())
    throw std::invalid_argument("cascade depth must lie in [0, ladder depth]");
  if (s == 0) throw std::invalid_argument("s must be a nonzero integer");
}

std::string TbetaSystem::describe() const {
  std::ostringstream os;
  os.precision(17);
  os << "beta-shifted tent-cascade skew product on T^2 (depth " << depth_
     << ", s = " << s_ << ", beta = " << beta_ << ")";
  return os.str();
}

void TbetaSystem::step(double* state) const {
  CocycleFunction f(sched_, depth_);
  const double hv = f.eval(dd_from(state[0]));
  state[0] = circle_frac(state[0] + to_double(sched_.rotation().value()));
  state[1] = circle_frac(state[1] + (static_cast<double>(s_) * hv + beta_));
}

double TbetaSystem::dist(const double* a, const double* b) const {
  return torus2_dist(a[0], a[1], b[0], b[1]);
}

void TbetaSystem::orbit(const double* start, std::int64_t n,
                        double* out) const {
  walk_orbit(sched_, depth_, static_cast<double>(s_), beta_, start, n, out);
}

void tbeta_step(const ParameterSchedule& sched, int s, double beta,
                double* state) {
  if (s == 0) throw std::invalid_argument("s must be a nonzero integer");
  CocycleFunction f(sched);
  const double hv = f.eval(dd_from(state[0]));
  state[0] = circle_frac(state[0] + to_double(sched.rotation().value()));
  state[1] = circle_frac(state[1] + (static_cast<double>(s) * hv + beta));
}

double beta_independence_defect(double beta) {
  double t = beta - std::floor(beta);
  double best = std::abs(t - std::nearbyint(t));  // q = 1
  std::int64_t q_prev = 0, q = 1;
  for (int it = 0; it < 40 && q <= 1000000; ++it) {
    if (t < 1e-18) return 0.0;  // expansion terminated: rational to fp depth
    const double inv = 1.0 / t;
    const double a = std::floor(inv);
    if (a > 1e15) return 0.0;
    t = inv - a;
    const std::int64_t qn =
        static_cast<std::int64_t>(a) * q + q_prev;
    q_prev = q;
    q = qn;
    if (q <= 0 || q > 1000000) break;
    const double m = static_cast<double>(q) * beta;
    best = std::min(best, std::abs(m - std::nearbyint(m)));
  }
  return best;
}

}  // namespace spanlab

// Orbit queries for the golden rotation, answered through the convergent
// tables instead of orbit walks.
//
// The workhorse identity: among the first q_j multiples of alpha, the point
// with residue k = m * p_j (mod q_j) sits at k/q_j plus a remainder smaller
// than half the slot width 1/q_j, and the residue map is inverted by
// p_j^2 = (-1)^(j-1) (mod q_j). A full block of q_j consecutive indices is
// therefore searched by rounding the target once, and a general index range
// peels off full blocks one level at a time. Every candidate distance is
// evaluated on the same index formula the result reports, so ties resolve
// exactly like a linear scan.

#include "spanlab/diophantine.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <utility>

namespace spanlab {

namespace {

constexpr std::int64_t kMaxIndex = 9007199254740991;  // 2^53 - 1

std::int64_t mul_mod(std::int64_t a, std::int64_t b, std::int64_t q) {
  return static_cast<std::int64_t>(
      static_cast<unsigned __int128>(a) * static_cast<unsigned __int128>(b) %
      static_cast<unsigned __int128>(q));
}

}  // namespace

NearestHit nearest_orbit_point(const GoldenRotation& rot, const Dd& x0,
                               std::int64_t i_lo, std::int64_t i_hi,
                               const Dd& c) {
  assert(i_lo <= i_hi);
  assert(std::llabs(i_lo) <= kMaxIndex && std::llabs(i_hi) <= kMaxIndex);

  NearestHit best;
  best.index = i_lo;
  best.offset = dd_frac_centered(dd_frac_mul_i64(rot.value(), i_lo) + x0 - c);
  best.dist = dd_abs(best.offset);

  auto consider = [&](std::int64_t i) {
    if (i < i_lo || i > i_hi) return;
    Dd off = dd_frac_centered(dd_frac_mul_i64(rot.value(), i) + x0 - c);
    Dd d = dd_abs(off);
    if (d < best.dist || (d == best.dist && i < best.index)) {
      best.index = i;
      best.offset = off;
      best.dist = d;
    }
  };

  // Prefix form: minimize ||m*alpha - cc|| over m in [0, len] with
  // m = i - i_lo, so cc collects the target, the base point and the shift
  // of the whole range.
  std::int64_t base = i_lo;
  std::int64_t len = i_hi - i_lo;
  Dd cc = dd_frac_centered(c - x0 - dd_frac_mul_i64(rot.value(), i_lo));

  while (len > 40) {
    // Largest full block [0, q_j) inside [0, len].
    int j = rot.level_for(len + 1);
    assert(j >= 2);
    const std::int64_t q = rot.q(j);
    const std::int64_t p = rot.p(j);
    const std::int64_t inv = (j % 2 == 1) ? p : q - p;

    // Nearest residue slot; the window of 3 on each side absorbs both the
    // in-slot remainder (< 1/(2 q)) and the double rounding of cu * q, which
    // can reach one unit when q is near 2^53.
    const double cu = to_double(dd_frac_unit(cc));
    const std::int64_t k0 = static_cast<std::int64_t>(std::llround(cu * static_cast<double>(q)));
    for (std::int64_t dk = -3; dk <= 3; ++dk) {
      std::int64_t k = (k0 + dk) % q;
      if (k < 0) k += q;
      consider(base + mul_mod(k, inv, q));
    }

    // Tail [q_j, len] restarts at index base + q_j with the target shifted
    // by the block remainder.
    base += q;
    len -= q;
    cc = dd_frac_centered(cc - rot.v(j));
  }

  for (std::int64_t m = 0; m <= len; ++m) consider(base + m);
  return best;
}

std::vector<std::int64_t> enumerate_hits(const GoldenRotation& rot,
                                         const Dd& x0, std::int64_t i_lo,
                                         std::int64_t i_hi, const Dd& c,
                                         const Dd& half_width,
                                         std::int64_t max_hits) {
  assert(i_lo <= i_hi);
  std::vector<std::int64_t> hits;
  std::vector<std::pair<std::int64_t, std::int64_t>> work;
  work.emplace_back(i_lo, i_hi);
  while (!work.empty()) {
    auto [lo, hi] = work.back();
    work.pop_back();
    if (lo > hi) continue;
    NearestHit h = nearest_orbit_point(rot, x0, lo, hi, c);
    if (half_width < h.dist) continue;
    hits.push_back(h.index);
    if (static_cast<std::int64_t>(hits.size()) > max_hits) {
      throw std::runtime_error("enumerate_hits: hit count exceeds max_hits");
    }
    work.emplace_back(lo, h.index - 1);
    work.emplace_back(h.index + 1, hi);
  }
  std::sort(hits.begin(), hits.end());
  return hits;
}

std::int64_t orbit_interval_count(const GoldenRotation& rot, const Dd& x0,
                                  std::int64_t n, const Dd& c,
                                  const Dd& half_width) {
  assert(n >= 1);
  return static_cast<std::int64_t>(
      enumerate_hits(rot, x0, 0, n - 1, c, half_width).size());
}

namespace {

// min over 1 <= m <= k of the circle offset of m*alpha approaching 0 from
// one side: from above the records sit at even-level convergents, from
// below at odd-level ones.
Dd one_sided_min(const GoldenRotation& rot, std::int64_t k, bool from_above) {
  if (k < 1) return dd_from(2.0);
  int j = rot.level_for(k);
  const int want = from_above ? 0 : 1;
  if (j % 2 != want) --j;
  if (j < 0) return dd_from(2.0);
  return rot.theta(j);
}

}  // namespace

Dd max_gap(const GoldenRotation& rot, std::int64_t n) {
  assert(n >= 1);
  if (n == 1) return dd_from(1.0);

  // Gap to the right of point i among {m*alpha : 0 <= m < n}: the nearest
  // neighbour from above is reached by some step r with i + r or i - r
  // still inside the range, so only the two one-sided records matter.
  auto gap_at = [&](std::int64_t i) -> Dd {
    Dd up = one_sided_min(rot, n - 1 - i, true);
    Dd down = one_sided_min(rot, i, false);
    return (up < down) ? up : down;
  };

  // Both records are step functions of i with breaks where a convergent
  // enters the admissible step range, so the maximum over i is attained
  // next to a break.
  Dd widest = dd_from(0.0);
  auto consider = [&](std::int64_t i) {
    if (i < 0 || i > n - 1) return;
    Dd g = gap_at(i);
    if (widest < g) widest = g;
  };
  consider(0);
  consider(n - 1);
  for (int j = 0; j < rot.levels(); ++j) {
    const std::int64_t q = rot.q(j);
    if (q > n - 1) break;
    for (std::int64_t d = -1; d <= 1; ++d) {
      consider(q + d);
      consider(n - 1 - q + d);
    }
  }
  return widest;
}

}  // namespace spanlab

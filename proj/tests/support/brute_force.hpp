// Enumeration oracles for the closed-form orbit machinery: everything here
// recomputes the quantity from its definition by walking indices one by one,
// in Dd arithmetic, so the fast implementations can be validated on small
// instances against an independent route. The covering oracles at the bottom
// solve minimum cover and maximum separated subset exhaustively on samples
// of at most 20 points.

#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "spanlab/circle.hpp"
#include "spanlab/continued_fraction.hpp"
#include "spanlab/covering.hpp"
#include "spanlab/dd.hpp"

namespace spanlab::testing {

// argmin over i in [i_lo, i_hi] of ||x0 + i*alpha - c||, ties to smallest i;
// distances evaluated exactly like NearestHit's final route
inline std::pair<std::int64_t, Dd> brute_nearest(const GoldenRotation& rot,
                                                 const Dd& x0,
                                                 std::int64_t i_lo,
                                                 std::int64_t i_hi,
                                                 const Dd& c) {
  std::int64_t best_i = i_lo;
  Dd best_d = dd_from(2.0);
  for (std::int64_t i = i_lo; i <= i_hi; ++i) {
    Dd d = circle_norm_dd(dd_frac_mul_i64(rot.value(), i) + x0 - c);
    if (d < best_d) {
      best_d = d;
      best_i = i;
    }
  }
  return {best_i, best_d};
}

inline std::vector<std::int64_t> brute_hits(const GoldenRotation& rot,
                                            const Dd& x0, std::int64_t i_lo,
                                            std::int64_t i_hi, const Dd& c,
                                            const Dd& half_width) {
  std::vector<std::int64_t> out;
  for (std::int64_t i = i_lo; i <= i_hi; ++i) {
    Dd d = circle_norm_dd(dd_frac_mul_i64(rot.value(), i) + x0 - c);
    if (d <= half_width) out.push_back(i);
  }
  return out;
}

inline Dd brute_max_gap(const GoldenRotation& rot, std::int64_t n) {
  std::vector<Dd> pts;
  pts.reserve(static_cast<std::size_t>(n));
  for (std::int64_t i = 0; i < n; ++i) {
    pts.push_back(dd_frac_unit(dd_frac_mul_i64(rot.value(), i)));
  }
  std::sort(pts.begin(), pts.end(),
            [](const Dd& a, const Dd& b) { return a < b; });
  Dd best = dd_from(1.0) - pts.back() + pts.front();  // wrap gap
  for (std::size_t k = 1; k < pts.size(); ++k) {
    Dd g = pts[k] - pts[k - 1];
    if (best < g) best = g;
  }
  return best;
}

// minimum number of closed eps-balls centered at sample points covering the
// whole sample; branches on the lowest uncovered point
inline int brute_min_cover(std::size_t m, const PairDist& dist, double eps) {
  if (m == 0 || m > 20) throw std::invalid_argument("brute_min_cover: size");
  std::vector<std::uint32_t> ball(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (dist(i, j) <= eps) ball[i] |= 1u << j;
  const std::uint32_t full = (1u << m) - 1u;
  std::vector<int> best(static_cast<std::size_t>(full) + 1u,
                        static_cast<int>(m) + 1);
  best[0] = 0;
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    if (best[mask] > static_cast<int>(m)) continue;
    if (mask == full) return best[mask];
    const std::uint32_t missing = full & ~mask;
    const int p = __builtin_ctz(missing);
    for (std::size_t i = 0; i < m; ++i) {
      if (!(ball[i] & (1u << p))) continue;
      const std::uint32_t next = mask | ball[i];
      if (best[mask] + 1 < best[next]) best[next] = best[mask] + 1;
    }
  }
  return best[full];
}

// size of the largest subset whose points lie pairwise strictly more than
// eps apart
inline int brute_max_separated(std::size_t m, const PairDist& dist,
                               double eps) {
  if (m == 0 || m > 20)
    throw std::invalid_argument("brute_max_separated: size");
  std::vector<std::uint32_t> conflict(m, 0);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j)
      if (i != j && dist(i, j) <= eps) conflict[i] |= 1u << j;
  const std::uint32_t full = (1u << m) - 1u;
  int best = 0;
  for (std::uint32_t sub = 0; sub <= full; ++sub) {
    bool ok = true;
    for (std::uint32_t rest = sub; rest && ok;) {
      const int i = __builtin_ctz(rest);
      rest &= rest - 1;
      ok = (sub & conflict[static_cast<std::size_t>(i)]) == 0;
    }
    if (ok) best = std::max(best, __builtin_popcount(sub));
  }
  return best;
}

}  // namespace spanlab::testing

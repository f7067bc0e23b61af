// Exact orbit queries for the golden rotation, all answered without walking
// the orbit: nearest visit to a target, every visit to a narrow interval,
// visit counts, and the largest gap left by the first n points. Indices may
// span [-(2^53 - 1), 2^53 - 1] and interval half-widths may sit near 1e-12,
// so everything runs on Dd values carried through the convergent tables.
//
// Queries reduce along full convergent blocks: the first q_j multiples of
// alpha occupy the residue slots k/q_j up to a remainder below half a slot,
// with k = m * p_j invertible mod q_j. A range peels one full block per
// level, so a nearest-point query costs O(levels) modular steps, and every
// reported distance is re-evaluated on the exact index formula.

#pragma once

#include <cstdint>
#include <vector>

#include "spanlab/continued_fraction.hpp"
#include "spanlab/dd.hpp"

namespace spanlab {

struct NearestHit {
  std::int64_t index = 0;  // argmin i
  Dd offset;               // frac_centered(x0 + i*alpha - c), signed
  Dd dist;                 // |offset|
};

// argmin over i in [i_lo, i_hi] of ||x0 + i*alpha - c||; ties break to the
// smallest i. Requires i_lo <= i_hi, both within +-(2^53 - 1).
NearestHit nearest_orbit_point(const GoldenRotation& rot, const Dd& x0,
                               std::int64_t i_lo, std::int64_t i_hi,
                               const Dd& c);

// all i in [i_lo, i_hi] with ||x0 + i*alpha - c|| <= half_width (inclusive),
// ascending; aborts if more than max_hits land inside.
std::vector<std::int64_t> enumerate_hits(const GoldenRotation& rot,
                                         const Dd& x0, std::int64_t i_lo,
                                         std::int64_t i_hi, const Dd& c,
                                         const Dd& half_width,
                                         std::int64_t max_hits = 10000000);

// #{ 0 <= i < n : ||x0 + i*alpha - c|| <= half_width }, exact
std::int64_t orbit_interval_count(const GoldenRotation& rot, const Dd& x0,
                                  std::int64_t n, const Dd& c,
                                  const Dd& half_width);

// largest gap of the circle partition by {i*alpha : 0 <= i < n}; n >= 1.
// Nonincreasing in n; max_gap(1) = 1.
Dd max_gap(const GoldenRotation& rot, std::int64_t n);

}  // namespace spanlab

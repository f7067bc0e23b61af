// Exhaustive validation of the closed-form orbit queries against the
// walk-every-index oracles in tests/support/brute_force.hpp.

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "spanlab/circle.hpp"
#include "spanlab/continued_fraction.hpp"
#include "spanlab/dd.hpp"
#include "spanlab/diophantine.hpp"
#include "support/brute_force.hpp"

using namespace spanlab;
using spanlab::testing::brute_hits;
using spanlab::testing::brute_max_gap;
using spanlab::testing::brute_nearest;

namespace {

double u01(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1p-53;
}

// compare a nearest query against the oracle; near-exact ties (Dd gap below
// 1e-28) may legitimately resolve to either index
void check_nearest(const GoldenRotation& rot, const Dd& x0, std::int64_t lo,
                   std::int64_t hi, const Dd& c) {
  NearestHit fast = nearest_orbit_point(rot, x0, lo, hi, c);
  auto [bi, bd] = brute_nearest(rot, x0, lo, hi, c);
  if (fast.index != bi) {
    CHECK_MESSAGE(std::fabs(to_double(fast.dist - bd)) < 1e-28,
                  "lo=" << lo << " hi=" << hi << " fast=" << fast.index
                        << " brute=" << bi);
  } else {
    CHECK_EQ(fast.index, bi);
    CHECK(fast.dist == bd);
  }
  CHECK(fast.index >= lo);
  CHECK(fast.index <= hi);
}

}  // namespace

TEST_SUITE("diophantine") {

TEST_CASE("nearest_orbit_point: exhaustive sweep over small ranges") {
  GoldenRotation rot;
  std::mt19937_64 rng(2026);
  Dd x0 = dd_from(0.234375);
  for (std::int64_t n = 1; n <= 60; ++n) {
    for (int t = 0; t < 12; ++t) {
      Dd c = dd_from(u01(rng));
      check_nearest(rot, x0, 0, n - 1, c);
      check_nearest(rot, x0, -(n / 2), n - 1 - n / 2, c);
      check_nearest(rot, x0, 1000, 1000 + n - 1, c);
    }
  }
}

TEST_CASE("nearest_orbit_point: adversarial midpoint targets") {
  GoldenRotation rot;
  Dd x0 = dd_from(0.0);
  // targets equidistant (to Dd noise) between two orbit points
  const std::int64_t pairs[][2] = {{2, 5}, {0, 13}, {7, 20}, {33, 54}, {1, 2}};
  for (const auto& pr : pairs) {
    Dd xi = dd_frac_unit(dd_frac_mul_i64(rot.value(), pr[0]));
    Dd xj = dd_frac_unit(dd_frac_mul_i64(rot.value(), pr[1]));
    Dd mid = dd_frac_unit((xi + xj) * 0.5);
    check_nearest(rot, x0, 0, 59, mid);
    // the other midpoint, half a circle away
    Dd mid2 = dd_frac_unit(mid + 0.5);
    check_nearest(rot, x0, 0, 59, mid2);
  }
}

TEST_CASE("nearest_orbit_point: medium ranges against the oracle") {
  GoldenRotation rot;
  std::mt19937_64 rng(2027);
  for (std::int64_t n : {1000, 6765, 10946}) {
    Dd x0 = dd_from(u01(rng));
    for (int t = 0; t < 25; ++t) {
      Dd c = dd_from(u01(rng));
      check_nearest(rot, x0, 0, n - 1, c);
    }
    // and a negative-offset window
    for (int t = 0; t < 10; ++t) {
      Dd c = dd_from(u01(rng));
      check_nearest(rot, x0, -n / 3, n - 1 - n / 3, c);
    }
  }
}

TEST_CASE("nearest_orbit_point: targets on the orbit give zero distance") {
  GoldenRotation rot;
  Dd x0 = dd_from(0.6875);
  for (std::int64_t i : {0LL, 17LL, 832040LL, 20365011074LL}) {
    Dd c = rot.orbit_point(x0, i);
    NearestHit hit = nearest_orbit_point(rot, x0, i - 5, i + 5, c);
    CHECK_EQ(hit.index, i);
    CHECK(to_double(hit.dist) < 1e-26);
  }
}

TEST_CASE("nearest_orbit_point: wide ranges hit the convergent bound") {
  GoldenRotation rot;
  // with c = 0 and index range [1, R] the best distance is min_abs_rot(R)
  for (std::int64_t r : {100LL, 832040LL, 1000000LL, 53316291173LL}) {
    NearestHit hit = nearest_orbit_point(rot, dd_from(0.0), 1, r, dd_from(0.0));
    Dd want = rot.min_abs_rot(r);
    CHECK_MESSAGE(std::fabs(to_double(hit.dist - want)) <=
                      7e-33 * static_cast<double>(hit.index) + 1e-28,
                  "r=" << r);
    CHECK_EQ(hit.index, rot.q(rot.level_for(r)));
  }
}

TEST_CASE("enumerate_hits matches the oracle, boundaries inclusive") {
  GoldenRotation rot;
  std::mt19937_64 rng(2028);
  for (double w : {1e-5, 1e-3, 0.05, 0.24}) {
    for (int t = 0; t < 8; ++t) {
      Dd x0 = dd_from(u01(rng));
      Dd c = dd_from(u01(rng));
      std::int64_t lo = static_cast<std::int64_t>(rng() % 3000) - 1500;
      std::int64_t hi = lo + static_cast<std::int64_t>(rng() % 4000);
      auto fast = enumerate_hits(rot, x0, lo, hi, c, dd_from(w));
      auto slow = brute_hits(rot, x0, lo, hi, c, dd_from(w));
      CHECK_MESSAGE(fast == slow, "w=" << w << " lo=" << lo << " hi=" << hi);
    }
  }
  // exact boundary: half_width equal to the hit's own reported distance is
  // inclusive; take the width from the same evaluation the search performs
  Dd w = nearest_orbit_point(rot, dd_from(0.0), rot.q(15), rot.q(15),
                             dd_from(0.0))
             .dist;
  auto hits = enumerate_hits(rot, dd_from(0.0), 1, rot.q(15), dd_from(0.0), w);
  bool has_q15 = false;
  for (auto i : hits) has_q15 = has_q15 || i == rot.q(15);
  CHECK(has_q15);
}

TEST_CASE("orbit_interval_count equals enumeration") {
  GoldenRotation rot;
  std::mt19937_64 rng(2029);
  for (int t = 0; t < 10; ++t) {
    Dd x0 = dd_from(u01(rng));
    Dd c = dd_from(u01(rng));
    double w = 0.002 + 0.05 * u01(rng);
    std::int64_t n = 500 + static_cast<std::int64_t>(rng() % 2000);
    std::int64_t fast = orbit_interval_count(rot, x0, n, c, dd_from(w));
    auto slow = brute_hits(rot, x0, 0, n - 1, c, dd_from(w));
    CHECK_EQ(fast, static_cast<std::int64_t>(slow.size()));
  }
  // equidistribution sanity on [0, 0.1): frequency ~ n/10 for n = 1000
  std::int64_t cnt = orbit_interval_count(rot, dd_from(0.0), 1000,
                                          dd_from(0.05), dd_from(0.05));
  CHECK(cnt >= 95);
  CHECK(cnt <= 105);
}

TEST_CASE("max_gap: exhaustive against sorted enumeration") {
  GoldenRotation rot;
  for (std::int64_t n = 1; n <= 2500; ++n) {
    Dd fast = max_gap(rot, n);
    Dd slow = brute_max_gap(rot, n);
    CHECK_MESSAGE(std::fabs(to_double(fast - slow)) < 1e-28, "n=" << n);
  }
}

TEST_CASE("max_gap at Fibonacci sizes and monotonicity") {
  GoldenRotation rot;
  // n = q_j points leave largest gap theta_{j-2}
  for (int j : {8, 15, 22, 29, 40, 50}) {
    CHECK(max_gap(rot, rot.q(j)) == rot.theta(j - 2));
  }
  Dd prev = max_gap(rot, 1);
  for (std::int64_t n : {2LL, 3LL, 5LL, 100LL, 832039LL, 832040LL, 832041LL,
                         1000000LL, 53316291173LL}) {
    Dd g = max_gap(rot, n);
    CHECK(g <= prev);
    prev = g;
  }
}

}  // TEST_SUITE

// Circle geometry and metric-profile tests against direct-definition
// oracles (O(n^2) recomputation, long double reference sums).

#include <doctest.h>

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "spanlab/circle.hpp"
#include "spanlab/dd.hpp"
#include "spanlab/metrics.hpp"

using namespace spanlab;

TEST_SUITE("circle") {

TEST_CASE("circle_frac maps into [0,1) including rounding edge cases") {
  CHECK_EQ(circle_frac(0.0), 0.0);
  CHECK_EQ(circle_frac(1.0), 0.0);
  CHECK_EQ(circle_frac(-1.0), 0.0);
  CHECK_EQ(circle_frac(2.75), 0.75);
  CHECK_EQ(circle_frac(-0.25), 0.75);
  // -1e-17 + 1 rounds to 1.0; the guard must fold it to 0
  CHECK_EQ(circle_frac(-1e-17), 0.0);
  CHECK(circle_frac(-1e-16) < 1.0);
  CHECK(circle_frac(-1e-16) > 0.9999999999999997);
}

TEST_CASE("circle_dist known values and symmetry") {
  CHECK_EQ(circle_dist(0.9, 0.1), doctest::Approx(0.2).epsilon(1e-15));
  CHECK_EQ(circle_dist(0.25, 0.75), 0.5);
  CHECK_EQ(circle_dist(0.1, 0.1), 0.0);
  CHECK_EQ(circle_dist(0.0, 0.999), doctest::Approx(0.001).epsilon(1e-12));
  std::mt19937_64 rng(11);
  for (int t = 0; t < 200; ++t) {
    double a = static_cast<double>(rng() >> 11) * 0x1p-53;
    double b = static_cast<double>(rng() >> 11) * 0x1p-53;
    CHECK_EQ(circle_dist(a, b), circle_dist(b, a));
    CHECK(circle_dist(a, b) <= 0.5);
    CHECK(circle_dist(a, b) >= 0.0);
    // shift invariance mod 1 up to representation noise
    CHECK_EQ(circle_dist(a, b),
             doctest::Approx(circle_dist(circle_frac(a + 0.25), circle_frac(b + 0.25)))
                 .epsilon(1e-14));
  }
}

TEST_CASE("circle_offset is the signed version of circle_dist") {
  std::mt19937_64 rng(12);
  for (int t = 0; t < 200; ++t) {
    double a = static_cast<double>(rng() >> 11) * 0x1p-53;
    double b = static_cast<double>(rng() >> 11) * 0x1p-53;
    double off = circle_offset(a, b);
    CHECK(off >= -0.5);
    CHECK(off < 0.5);
    CHECK_EQ(std::min(std::fabs(off), 1.0 - std::fabs(off)),
             doctest::Approx(circle_dist(a, b)).epsilon(1e-15));
  }
}

TEST_CASE("torus2_dist adds the coordinate distances") {
  CHECK_EQ(torus2_dist(0.9, 0.2, 0.1, 0.3),
           doctest::Approx(0.3).epsilon(1e-14));
  CHECK_EQ(torus2_dist(0.25, 0.25, 0.75, 0.75), 1.0);
  CHECK_EQ(torus2_dist(0.4, 0.7, 0.4, 0.7), 0.0);
}

TEST_CASE("Dd circle distance agrees with binary64 at coarse scales") {
  std::mt19937_64 rng(13);
  Dd alpha = golden_alpha();
  for (int t = 0; t < 100; ++t) {
    std::int64_t i = static_cast<std::int64_t>(rng() % 2000000) - 1000000;
    std::int64_t j = static_cast<std::int64_t>(rng() % 2000000) - 1000000;
    Dd x = dd_frac_unit(dd_frac_mul_i64(alpha, i));
    Dd y = dd_frac_unit(dd_frac_mul_i64(alpha, j));
    double coarse = circle_dist(to_double(x), to_double(y));
    double fine = to_double(circle_dist_dd(x, y));
    CHECK(std::fabs(coarse - fine) < 1e-13);
    CHECK(fine <= 0.5);
  }
}

TEST_CASE("Dd circle distance resolves separations binary64 cannot") {
  // two points 1e-13 + 1e-17 apart around the wrap point
  Dd x = dd_from(1.0) - 5e-14;  // exact as a hi/lo pair
  Dd y = dd_norm(5e-14, 1e-17);
  Dd d = circle_dist_dd(dd_frac_unit(x), dd_frac_unit(y));
  CHECK(std::fabs(to_double(d) - (1e-13 + 1e-17)) < 1e-28);
}

}  // TEST_SUITE

namespace {

// direct-definition oracle, long double reference arithmetic
struct ProfileOracle {
  double d_max, d_hat, d_bar;
};

ProfileOracle profile_oracle(const std::vector<double>& e, std::size_t n) {
  double mx = 0.0;
  long double hat = 0.0L;
  long double bar = 0.0L;
  for (std::size_t k = 1; k <= n; ++k) {
    mx = std::max(mx, e[k - 1]);
    long double s = 0.0L;
    for (std::size_t i = 0; i < k; ++i) s += e[i];
    bar = s / static_cast<long double>(k);
    hat = std::max(hat, bar);
  }
  return {mx, static_cast<double>(hat), static_cast<double>(bar)};
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("streaming profiles match the O(n^2) oracle") {
  std::mt19937_64 rng(101);
  std::vector<double> e(400);
  for (auto& v : e) v = static_cast<double>(rng() >> 11) * 0x1p-54;  // [0, 1/2)
  for (std::size_t n : {1u, 2u, 3u, 17u, 100u, 400u}) {
    OrbitMetrics m = orbit_metrics(static_cast<std::int64_t>(n),
                                   [&](std::int64_t i) { return e[i]; });
    ProfileOracle o = profile_oracle(e, n);
    CHECK_EQ(m.d_max, o.d_max);
    CHECK_EQ(m.d_bar, doctest::Approx(o.d_bar).epsilon(1e-14));
    CHECK_EQ(m.d_hat, doctest::Approx(o.d_hat).epsilon(1e-14));
  }
}

TEST_CASE("profile chain inequality and monotonicity") {
  std::mt19937_64 rng(102);
  std::vector<double> e(600);
  for (auto& v : e) v = static_cast<double>(rng() >> 11) * 0x1p-54;
  MetricAccumulator acc;
  double prev_max = 0.0, prev_hat = 0.0;
  bool bar_decreased = false;
  for (double v : e) {
    acc.push(v);
    OrbitMetrics m = acc.value();
    CHECK(m.d_max >= m.d_hat);
    CHECK(m.d_hat >= m.d_bar);
    CHECK(m.d_max >= prev_max);
    CHECK(m.d_hat >= prev_hat);
    if (m.d_bar < prev_hat) bar_decreased = true;
    prev_max = m.d_max;
    prev_hat = m.d_hat;
  }
  // d_bar genuinely dips below the peak on random data
  CHECK(bar_decreased);
}

TEST_CASE("d_hat reconstruction from stored d_bar values is exact") {
  std::mt19937_64 rng(103);
  std::vector<double> e(500);
  for (auto& v : e) v = static_cast<double>(rng() >> 11) * 0x1p-53;
  MetricAccumulator acc;
  std::vector<double> bars;
  std::vector<double> hats;
  for (double v : e) {
    acc.push(v);
    bars.push_back(acc.value().d_bar);
    hats.push_back(acc.value().d_hat);
  }
  double running = 0.0;
  for (std::size_t k = 0; k < bars.size(); ++k) {
    running = std::max(running, bars[k]);
    CHECK_EQ(running, hats[k]);  // bit-for-bit
  }
}

TEST_CASE("metric_profile emits the same values as repeated orbit_metrics") {
  std::mt19937_64 rng(104);
  std::vector<double> e(1000);
  for (auto& v : e) v = static_cast<double>(rng() >> 11) * 0x1p-54;
  const std::int64_t ns[] = {1, 10, 100, 640, 1000};
  metric_profile(ns, 5, [&](std::int64_t i) { return e[i]; },
                 [&](int k, const OrbitMetrics& m) {
                   OrbitMetrics direct = orbit_metrics(
                       ns[k], [&](std::int64_t i) { return e[i]; });
                   CHECK_EQ(m.d_max, direct.d_max);
                   CHECK_EQ(m.d_bar, direct.d_bar);
                   CHECK_EQ(m.d_hat, direct.d_hat);
                 });
}

TEST_CASE("identical orbits give all-zero profiles") {
  OrbitMetrics m = orbit_metrics(50, [](std::int64_t) { return 0.0; });
  CHECK_EQ(m.d_max, 0.0);
  CHECK_EQ(m.d_hat, 0.0);
  CHECK_EQ(m.d_bar, 0.0);
}

}  // TEST_SUITE

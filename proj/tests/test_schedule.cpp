// Ladder construction pinned bit for bit against the frozen reference
// values, plus serialization round-trips, membership queries, the loud
// magnitude-cap failure, and the post-hoc certificate.

#include <string>

#include "doctest.h"
#include "spanlab/schedule.hpp"
#include "support/frozen.hpp"

using namespace spanlab;

TEST_SUITE("schedule") {
  TEST_CASE("depth-2 ladder reproduces the frozen constants bit for bit") {
    ParameterSchedule s = ParameterSchedule::build(2);
    REQUIRE_EQ(s.depth(), 2);
    REQUIRE_EQ(static_cast<int>(s.levels().size()), 3);

    const LevelParams& l1 = s.level(1);
    CHECK_EQ(l1.M, frozen::kM1);
    CHECK_EQ(l1.N, frozen::kN1);
    CHECK_EQ(l1.delta, frozen::kDelta1);
    CHECK_EQ(l1.gamma, frozen::kGamma1);
    CHECK_EQ(l1.l, frozen::kL1);
    CHECK_EQ(l1.delta_nudges, 0);
    CHECK_FALSE(l1.gamma_floored);
    CHECK_EQ(l1.gamma_raw, frozen::kGamma1);  // cap 0.9 delta_1 does not bind
    CHECK_EQ(l1.gamma_disjoint_radius, frozen::kGamma1DisjointRadius);

    const LevelParams& l2 = s.level(2);
    CHECK_EQ(l2.M, frozen::kM2);
    CHECK_EQ(l2.N, frozen::kN2);
    CHECK_EQ(l2.delta, frozen::kDelta2);
    CHECK_EQ(l2.gamma, frozen::kGamma2);
    CHECK_EQ(l2.l, frozen::kL2);
    CHECK_EQ(l2.thr_gap, frozen::kThrGap2);
    CHECK_EQ(l2.thr_count, frozen::kThrCount2);
    CHECK_EQ(l2.delta_nudges, 0);
    CHECK(l2.gamma_floored);
    CHECK_EQ(l2.gamma_raw, frozen::kGamma2Raw);
    CHECK_EQ(l2.gamma_disjoint_radius, frozen::kGamma2DisjointRadius);

    const LevelParams& top = s.internal_top();
    CHECK_EQ(top.k, 3);
    CHECK_EQ(top.M, frozen::kM3);
    CHECK_EQ(top.N, frozen::kN3);
    CHECK_EQ(top.delta, frozen::kDelta3);
    CHECK_EQ(top.thr_gap, frozen::kThrGap3);
    CHECK_EQ(top.thr_count, frozen::kThrCount3);
    CHECK_EQ(top.delta_nudges, 0);
    CHECK_EQ(top.gamma, 0.0);  // internal level: no tent layer, no separation
    CHECK_EQ(top.l, 0.0);
  }

  TEST_CASE("derived identities among the frozen constants") {
    CHECK_EQ(2.0 * frozen::kDelta1, frozen::kL1);     // same-interval pair wins
    CHECK_EQ(2.0 * frozen::kDelta2, frozen::kL2);
    CHECK_EQ(0.9 * frozen::kDelta2, frozen::kGamma2);  // floored tent width
    CHECK_EQ(frozen::kXPrime, frozen::kL2);           // delta_2 + l_2 / 2 = 2 delta_2
    CHECK_EQ(4.0 * static_cast<double>(frozen::kN1) * frozen::kDelta1,
             frozen::kMeasE1);
    CHECK_EQ(4.0 * static_cast<double>(frozen::kN2) * frozen::kDelta2,
             frozen::kMeasE2);
    CHECK_EQ(frozen::kN2, 100 * frozen::kM2);
    CHECK_EQ(frozen::kN3, 1000 * frozen::kM3);
  }

  TEST_CASE("depth-1 ladder agrees with the depth-2 prefix") {
    ParameterSchedule a = ParameterSchedule::build(1);
    ParameterSchedule b = ParameterSchedule::build(2);
    const LevelParams& a1 = a.level(1);
    const LevelParams& b1 = b.level(1);
    CHECK_EQ(a1.M, b1.M);
    CHECK_EQ(a1.N, b1.N);
    CHECK_EQ(a1.delta, b1.delta);
    CHECK_EQ(a1.gamma, b1.gamma);
    CHECK_EQ(a1.l, b1.l);
    CHECK_EQ(a1.gamma_disjoint_radius, b1.gamma_disjoint_radius);
    const LevelParams& at = a.internal_top();
    const LevelParams& b2 = b.level(2);
    CHECK_EQ(at.M, b2.M);
    CHECK_EQ(at.N, b2.N);
    CHECK_EQ(at.delta, b2.delta);
    CHECK_EQ(at.thr_gap, b2.thr_gap);
    CHECK_EQ(at.thr_count, b2.thr_count);
    CHECK_EQ(at.gamma, 0.0);
    CHECK_EQ(at.l, 0.0);
  }

  TEST_CASE("threshold brackets against the convergent tables") {
    ParameterSchedule s = ParameterSchedule::build(2);
    const GoldenRotation& rot = s.rotation();

    // M_2 = least denominator at or above max(thresholds); bracket is strict
    const std::int64_t thr2 =
        std::max({frozen::kThrGap2, frozen::kThrCount2, frozen::kN1 + 1});
    CHECK(rot.q(28) < thr2);       // F_29 = 514229
    CHECK(thr2 <= rot.q(29));      // F_30 = 832040 = M_2
    CHECK_EQ(rot.q(29), frozen::kM2);

    const std::int64_t thr3 =
        std::max({frozen::kThrGap3, frozen::kThrCount3, frozen::kN2 + 1});
    CHECK(rot.q(58) < thr3);       // F_59
    CHECK(thr3 <= rot.q(59));      // F_60 = M_3
    CHECK_EQ(rot.q(59), frozen::kM3);

    // the gap thresholds are themselves denominators
    CHECK_EQ(rot.q(24), frozen::kThrGap2);   // F_25
    CHECK_EQ(rot.q(54), frozen::kThrGap3);   // F_55

    // gap values at the built denominators
    CHECK(max_gap(rot, frozen::kM2) == rot.theta(27));
    CHECK(max_gap(rot, frozen::kM3) == rot.theta(57));
    CHECK(max_gap(rot, frozen::kM2) < dd_from(frozen::kL1));
    CHECK(max_gap(rot, frozen::kM3) < dd_from(frozen::kL2));

    // counting bound holds at M_k with the double-expression predicate
    {
      const double len = 4.0 * static_cast<double>(frozen::kN1) * frozen::kDelta1;
      const double target = frozen::kEta / 2.0;
      const double n = static_cast<double>(frozen::kM2);
      CHECK(n * len + 2.0 * static_cast<double>(2 * frozen::kN1) < n * target);
    }
    {
      const double len = 4.0 * static_cast<double>(frozen::kN2) * frozen::kDelta2;
      const double target = frozen::kEta / 4.0;
      const double n = static_cast<double>(frozen::kM3);
      CHECK(n * len + 2.0 * static_cast<double>(2 * frozen::kN2) < n * target);
    }
  }

  TEST_CASE("first hit and return indices on the base rotation") {
    ParameterSchedule s = ParameterSchedule::build(2);
    const GoldenRotation& rot = s.rotation();
    // least r >= 1 with ||r a|| < w; the minimum over [1, m] moves only at
    // denominators, so bracket checks at m and m - 1 certify minimality
    auto first_below = [&rot](double w) {
      return [&rot, w](std::int64_t m) {
        return to_double(rot.min_abs_rot(m)) < w;
      };
    };
    auto hit_l1 = first_below(frozen::kL1);
    CHECK(hit_l1(frozen::kFirstL1Hit));
    CHECK_FALSE(hit_l1(frozen::kFirstL1Hit - 1));
    auto hit_d1 = first_below(frozen::kDelta1);
    CHECK(hit_d1(frozen::kFirstDelta1Ret));
    CHECK_FALSE(hit_d1(frozen::kFirstDelta1Ret - 1));
    auto hit_g1 = first_below(frozen::kGamma1);
    CHECK(hit_g1(frozen::kFirstGamma1Ret));
    CHECK_FALSE(hit_g1(frozen::kFirstGamma1Ret - 1));
    auto hit_l2 = first_below(frozen::kL2);
    CHECK(hit_l2(frozen::kFirstL2Hit));
    CHECK_FALSE(hit_l2(frozen::kFirstL2Hit - 1));
    auto hit_d2 = first_below(frozen::kDelta2);
    CHECK(hit_d2(frozen::kFirstDelta2Ret));
    CHECK_FALSE(hit_d2(frozen::kFirstDelta2Ret - 1));
    auto hit_g2 = first_below(frozen::kGamma2);
    CHECK(hit_g2(frozen::kFirstGamma2Ret));
    CHECK_FALSE(hit_g2(frozen::kFirstGamma2Ret - 1));

    // tent disjointness radii: last m whose minimum still clears 2 gamma
    CHECK(to_double(rot.min_abs_rot(frozen::kGamma1DisjointRadius)) >
          2.0 * frozen::kGamma1);
    CHECK_FALSE(to_double(rot.min_abs_rot(frozen::kGamma1DisjointRadius + 1)) >
                2.0 * frozen::kGamma1);
    CHECK(to_double(rot.min_abs_rot(frozen::kGamma2DisjointRadius)) >
          2.0 * frozen::kGamma2);
    CHECK_FALSE(to_double(rot.min_abs_rot(frozen::kGamma2DisjointRadius + 1)) >
                2.0 * frozen::kGamma2);
  }

  TEST_CASE("membership queries against interval geometry") {
    ParameterSchedule s = ParameterSchedule::build(2);

    CHECK(s.in_level_set(1, dd_from(0.0)));
    CHECK(s.in_level_set(1, dd_from(frozen::kDelta1)));       // boundary: in
    CHECK_FALSE(s.in_level_set(1, dd_from(2.0 * frozen::kDelta1)));
    CHECK(s.in_level_set(2, dd_from(0.0)));
    CHECK(s.in_level_set(2, dd_from(frozen::kDelta2)));
    CHECK_FALSE(s.in_level_set(2, dd_from(frozen::kXPrime)));  // 2 delta_2: out
    CHECK(s.in_level_set(1, dd_from(frozen::kXPrime)));
    CHECK(s.in_union_set(2, dd_from(frozen::kXPrime)));
    CHECK_FALSE(s.in_union_set(2, dd_from(0.5)));

    NearestHit h = s.nearest_center(2, dd_from(frozen::kDelta2));
    CHECK_EQ(h.index, 0);
    CHECK_EQ(to_double(h.dist), frozen::kDelta2);
    CHECK(dd_is_negative(h.offset));  // center sits below the query point

    NearestHit mid = s.nearest_center(1, dd_from(0.5));
    CHECK(mid.index >= 0);
    CHECK(mid.index < 2 * frozen::kN1);
    CHECK(to_double(mid.dist) > frozen::kDelta1);
  }

  TEST_CASE("magnitude cap fails loudly at the level that breaks it") {
    CHECK_THROWS_AS(
        (void)ParameterSchedule::build(2, 0.01, 1000000000000LL),
        ScheduleError);
    try {
      (void)ParameterSchedule::build(2, 0.01, 1000000000000LL);
      FAIL("build should have thrown");
    } catch (const ScheduleError& e) {
      CHECK_EQ(e.level(), 3);
      CHECK(std::string(e.what()).find("magnitude cap") != std::string::npos);
      CHECK(std::string(e.what()).find("1548008755920") != std::string::npos);
    }
    // the default cap admits the same ladder
    CHECK_NOTHROW((void)ParameterSchedule::build(2, 0.01,
                                                 kDefaultMagnitudeCap));
    // bad arguments are rejected up front
    CHECK_THROWS_AS((void)ParameterSchedule::build(0), ScheduleError);
    CHECK_THROWS_AS((void)ParameterSchedule::build(2, 1.5), ScheduleError);
  }

  TEST_CASE("serialization round-trips bit for bit") {
    ParameterSchedule s = ParameterSchedule::build(2);
    const std::string text = s.serialize();
    ParameterSchedule t = ParameterSchedule::parse(text);

    CHECK_EQ(t.depth(), s.depth());
    CHECK_EQ(t.eta(), s.eta());
    CHECK_EQ(t.magnitude_cap(), s.magnitude_cap());
    REQUIRE_EQ(t.levels().size(), s.levels().size());
    for (std::size_t i = 0; i < s.levels().size(); ++i) {
      const LevelParams& a = s.levels()[i];
      const LevelParams& b = t.levels()[i];
      CHECK_EQ(a.k, b.k);
      CHECK_EQ(a.M, b.M);
      CHECK_EQ(a.N, b.N);
      CHECK_EQ(a.delta, b.delta);
      CHECK_EQ(a.gamma, b.gamma);
      CHECK_EQ(a.l, b.l);
      CHECK_EQ(a.thr_gap, b.thr_gap);
      CHECK_EQ(a.thr_count, b.thr_count);
      CHECK_EQ(a.delta_nudges, b.delta_nudges);
      CHECK_EQ(a.gamma_raw, b.gamma_raw);
      CHECK_EQ(a.gamma_floored, b.gamma_floored);
      CHECK_EQ(a.gamma_disjoint_radius, b.gamma_disjoint_radius);
    }
    CHECK_EQ(t.serialize(), text);

    CHECK_THROWS((void)ParameterSchedule::parse("tent-ladder v1\neta 0.01\n"));
    CHECK_THROWS((void)ParameterSchedule::parse("not a ladder"));
  }

  TEST_CASE("certificate passes on a built ladder and fails on a tampered one") {
    ParameterSchedule s = ParameterSchedule::build(2);
    ScheduleCertificate cert = certify_schedule(s);
    for (const CheckLine& c : cert.lines) {
      CAPTURE(c.name);
      CAPTURE(c.detail);
      CHECK(c.pass);
    }
    CHECK(cert.pass);
    CHECK(cert.lines.size() >= 20);
    CHECK(cert.summary().find("FAIL") == std::string::npos);

    // doubling delta_1 in the serialized text must trip the recomputation
    std::string text = s.serialize();
    const std::string d1 = "0x1.797cc39ffd60fp-17";
    const std::string d1x2 = "0x1.797cc39ffd60fp-16";
    auto pos = text.find(d1);
    REQUIRE(pos != std::string::npos);
    text.replace(pos, d1.size(), d1x2);
    ParameterSchedule bad = ParameterSchedule::parse(text);
    ScheduleCertificate bad_cert = certify_schedule(bad);
    CHECK_FALSE(bad_cert.pass);
    CHECK(bad_cert.summary().find("FAIL") != std::string::npos);
  }
}

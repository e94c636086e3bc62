#include <doctest.h>

#include "oracles.hpp"
#include "qracah/hexagon.hpp"

using namespace qracah;

TEST_CASE("slice ranges") {
  HexagonParams h{6, 3, 3};
  CHECK(slice_range(h, 0).lo == 0);
  CHECK(slice_range(h, 0).hi == 2);
  CHECK(slice_range(h, 6).lo == 3);
  CHECK(slice_range(h, 6).hi == 5);
  HexagonParams g{8, 4, 4};
  CHECK(slice_range(g, 3).lo == 0);
  CHECK(slice_range(g, 3).hi == 6);
  CHECK_THROWS_AS(slice_range(h, 7), config_error);
  CHECK_THROWS_AS(slice_range(h, -1), config_error);
  HexagonParams bad{3, 3, 1};
  CHECK_THROWS_AS(bad.validate(), config_error);
}

TEST_CASE("zone parameters") {
  const long long L = 3;
  HexagonParams h = HexagonParams::canonical(L);
  ZoneParams z = zone_of(h, 2 * L);
  CHECK(z.zone == 1);
  CHECK(z.M == 6 * L - 1);
  CHECK(z.alpha == QPower::q_pow(-8 * L));
  CHECK(z.beta == QPower::q_pow(-8 * L));
  CHECK(z.gamma == QPower::q_pow(-6 * L));
  CHECK(z.delta == QPower::kappa2_q_pow(0));
  // gamma q = q^{-M}
  CHECK(z.gamma.q_exp + 1 == Rat(-z.M));

  HexagonParams h2{10, 4, 3};
  CHECK(zone_formula(h2, 4, 1) == zone_formula(h2, 4, 2));

  CHECK(zone_of(HexagonParams{6, 4, 2}, 3).zone == 3);
}

TEST_CASE("coordinate shift") {
  HexagonParams h{6, 3, 3};
  CHECK(zone_of(h, 1).zone == 1);
  CHECK(tilde_x(h, 1, 2) == 2);
  CHECK(zone_of(h, 6).zone == 4);
  CHECK(tilde_x(h, 6, 4) == 4 - 3);
  HexagonParams g{6, 4, 2};
  CHECK(tilde_x(g, 3, 2) == 2 + 6 - 3 - 4);
  CHECK_THROWS_AS(tilde_x(h, 0, 5), config_error);
}

TEST_CASE("zone formulas agree on border slices") {
  Rng rng(411);
  int borders_seen = 0;
  for (int trial = 0; trial < 50; ++trial) {
    long long T = rng.range(2, 14);
    long long S = rng.range(1, T - 1);
    long long N = rng.range(1, 10);
    HexagonParams h{T, S, N};
    int prev = zone_of(h, 0).zone;
    for (long long t = 1; t <= T; ++t) {
      int cur = zone_of(h, t).zone;
      if (cur != prev) {
        CHECK(zone_formula(h, t, prev) == zone_formula(h, t, cur));
        ++borders_seen;
      }
      prev = cur;
    }
  }
  CHECK(borders_seen > 50);
}

TEST_CASE("hole counts") {
  Rng rng(412);
  for (int trial = 0; trial < 20; ++trial) {
    long long T = rng.range(2, 12);
    long long S = rng.range(1, T - 1);
    long long N = rng.range(1, 8);
    HexagonParams h{T, S, N};
    long long holes = 0;
    for (long long t = 0; t <= T; ++t) {
      long long extra = slice_range(h, t).count() - N;
      CHECK(extra >= 0);
      holes += extra;
    }
    CHECK(holes == S * (T - S));
  }
}

TEST_CASE("region classifier") {
  ScaledGeometry g{BigReal(4), BigReal(2), BigReal(1)};
  CHECK(classify_region(g, BigReal(2), BigReal(2)) == Region::CenterLine);
  CHECK(classify_region(g, BigReal(2), parse_real("3.2")) == Region::AboveWaterfall);
  CHECK(classify_region(g, BigReal(2), parse_real("2.5")) == Region::Waterfall);
  CHECK(classify_region(g, BigReal(2), parse_real("2.2")) == Region::Waterfall);
  CHECK(classify_region(g, BigReal(2), parse_real("1.2")) == Region::BelowWaterfall);
  CHECK(classify_region(g, BigReal(2), parse_real("1.8")) == Region::Waterfall);
  CHECK(classify_region(g, parse_real("0.5"), parse_real("0.8")) ==
        Region::BandOutsideWaterfall);
  CHECK(classify_region(g, parse_real("-1"), parse_real("0.8")) == Region::OutsideHex);
  CHECK(classify_region(g, parse_real("0.5"), parse_real("5")) == Region::OutsideHex);

  // tall hexagon: no waterfall at all
  ScaledGeometry tall{BigReal(2), BigReal(1), BigReal(3)};
  for (int ti = 1; ti < 8; ++ti)
    for (int xi = -4; xi < 20; ++xi) {
      Region r = classify_region(tall, BigReal(ti) / 4, BigReal(xi) / 4);
      CHECK(r != Region::Waterfall);
      CHECK(r != Region::CenterLine);
    }
}

TEST_CASE("saturation band has constant width") {
  Rng rng(413);
  for (int trial = 0; trial < 10; ++trial) {
    BigReal T = BigReal(rng.range(4, 16)) / 2;
    BigReal S = BigReal(rng.range(1, (long long)(2 * (double)T) - 1)) / 2;
    BigReal N = BigReal(rng.range(1, (long long)(2 * (double)T) - 1)) / 2;
    ScaledGeometry g{T, S, N};
    BigReal step = N / 200;
    for (int si = 1; si <= 4; ++si) {
      BigReal t = T * si / 5;
      long long hits = 0;
      for (BigReal x = -step; x < S + N + 1; x += step) {
        Region r = classify_region(g, t, x);
        if (r == Region::Waterfall || r == Region::CenterLine ||
            r == Region::BandOutsideWaterfall)
          ++hits;
      }
      CHECK(abs(hits * step - N) <= 3 * step);
    }
  }
}

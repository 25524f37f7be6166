// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "rasterix/error.hpp"
#include "rasterix/geo.hpp"

using namespace rasterix;

TEST_CASE("intersects uses closed boxes") {
  const BoundingBox a(0, 10, 0, 10);
  CHECK(intersects(a, a));
  CHECK_FALSE(intersects(a, BoundingBox(20, 30, 20, 30)));
  CHECK(intersects(a, BoundingBox(10, 20, 0, 10)));
  CHECK(intersects(a, BoundingBox(10, 20, 10, 20)));  // corner only
  CHECK_FALSE(intersects(a, BoundingBox(10.000001, 20, 0, 10)));
}

TEST_CASE("overlaps_time uses closed ranges") {
  CHECK(overlaps_time(TimeRange(100, 200), TimeRange(100, 200)));
  CHECK_FALSE(overlaps_time(TimeRange(0, 99), TimeRange(100, 200)));
  CHECK(overlaps_time(TimeRange(0, 100), TimeRange(100, 200)));
  CHECK(overlaps_time(TimeRange::instant(5), TimeRange::all()));
}

TEST_CASE("invalid geometry is rejected") {
  CHECK_THROWS_AS(GeoPoint(181, 0), Error);
  CHECK_THROWS_AS(GeoPoint(0, -90.5), Error);
  CHECK_THROWS_AS(GeoPoint(std::nan(""), 0), Error);
  CHECK_THROWS_AS(BoundingBox(10, 0, 0, 1), Error);
  CHECK_THROWS_AS(BoundingBox(0, 1, 5, 4), Error);
  CHECK_THROWS_AS(BoundingBox(0, 200, 0, 1), Error);
  CHECK_THROWS_AS(TimeRange(5, 4), Error);
  try {
    TimeRange(5, 4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}

TEST_CASE("intersects is symmetric, reflexive and matches the oracle") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> lon(-180, 180), lat(-90, 90);
  auto box = [&] {
    double x0 = lon(rng), x1 = lon(rng), y0 = lat(rng), y1 = lat(rng);
    return BoundingBox(std::min(x0, x1), std::max(x0, x1), std::min(y0, y1), std::max(y0, y1));
  };
  for (int i = 0; i < 5000; ++i) {
    const BoundingBox a = box(), b = box();
    CHECK(intersects(a, a));
    CHECK(intersects(a, b) == intersects(b, a));
    CHECK(intersects(a, b) == oracle::boxes_touch(a, b));
  }
}

TEST_CASE("disjoint time ranges are at least one second apart") {
  std::mt19937_64 rng(12);
  std::uniform_int_distribution<std::int64_t> t(-1000, 1000);
  for (int i = 0; i < 5000; ++i) {
    std::int64_t a0 = t(rng), a1 = t(rng), b0 = t(rng), b1 = t(rng);
    const TimeRange a(std::min(a0, a1), std::max(a0, a1));
    const TimeRange b(std::min(b0, b1), std::max(b0, b1));
    CHECK(overlaps_time(a, b) == overlaps_time(b, a));
    CHECK(overlaps_time(a, b) == oracle::times_touch(a, b));
    if (!overlaps_time(a, b)) {
      CHECK(std::max(a.start(), b.start()) - std::min(a.end(), b.end()) >= 1);
    }
  }
}

TEST_CASE("tile ids are deterministic") {
  const BoundingBox b(116.0, 116.0625, 39.0, 39.0625);
  const TileId a = TileId::derive(b, 1577836800, "LANDSAT_8");
  CHECK(a == TileId::derive(b, 1577836800, "LANDSAT_8"));
  CHECK(a.str().size() == 20);
  CHECK(a != TileId::derive(b, 1577836801, "LANDSAT_8"));
  CHECK(a != TileId::derive(b, 1577836800, "SENTINEL_2"));
  CHECK(a != TileId::derive(BoundingBox(116.0, 116.0625, 39.0, 39.06250001), 1577836800,
                            "LANDSAT_8"));
}

TEST_CASE("box helpers") {
  const BoundingBox b(0, 10, -4, 4);
  CHECK(b.center() == GeoPoint(5, 0));
  CHECK(b.contains(GeoPoint(10, 4)));
  CHECK_FALSE(b.contains(GeoPoint(10.5, 4)));
  CHECK(b.contains(BoundingBox(1, 2, 3, 4)));
  CHECK_FALSE(b.contains(BoundingBox(1, 2, 3, 5)));
  CHECK(BoundingBox::world().contains(b));
}

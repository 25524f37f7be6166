// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "rasterix/error.hpp"
#include "rasterix/geohash.hpp"

using namespace rasterix;

TEST_CASE("reference codes agree with the interleaving oracle") {
  // Frozen from oracle::geohash before the library encoder existed.
  CHECK(oracle::geohash(0, 0, 1) == "s");
  CHECK(oracle::geohash(57.64911, 10.40744, 11) == "u4pruydqqvj");

  CHECK(geohash::encode(GeoPoint(0, 0), 1) == "s");
  CHECK(geohash::encode(GeoPoint(10.40744, 57.64911), 11) == "u4pruydqqvj");
}

TEST_CASE("decode of a single character") {
  CHECK(geohash::decode("s") == BoundingBox(0, 45, 0, 45));
  CHECK(geohash::decode("0") == BoundingBox(-180, -135, -90, -45));
  CHECK(geohash::decode("z") == BoundingBox(135, 180, 45, 90));
}

TEST_CASE("malformed codes are rejected") {
  for (const char* bad : {"", "a", "si", "sl", "so", "S", "0123456789bcd"}) {
    CAPTURE(bad);
    try {
      geohash::decode(bad);
      FAIL("accepted");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Decode);
    }
  }
  CHECK_THROWS_AS(geohash::encode(GeoPoint(0, 0), 0), Error);
  CHECK_THROWS_AS(geohash::encode(GeoPoint(0, 0), 13), Error);
}

TEST_CASE("encode matches the oracle and round-trips") {
  std::mt19937_64 rng(21);
  std::uniform_real_distribution<double> lon(-180, 180), lat(-90, 90);
  std::uniform_int_distribution<int> prec(1, 12);
  for (int i = 0; i < 1000; ++i) {
    const GeoPoint p(lon(rng), lat(rng));
    const int k = prec(rng);
    const std::string code = geohash::encode(p, k);
    CHECK(code == oracle::geohash(p.lat(), p.lon(), k));
    const BoundingBox cell = geohash::decode(code);
    CHECK(cell.contains(p));
    const auto r = oracle::geohash_rect(code);
    CHECK(cell == BoundingBox(r.min_lon, r.max_lon, r.min_lat, r.max_lat));
    CHECK(geohash::encode(cell.center(), k) == code);
  }
}

TEST_CASE("codes form prefix chains with nested cells") {
  std::mt19937_64 rng(22);
  std::uniform_real_distribution<double> lon(-180, 180), lat(-90, 90);
  for (int i = 0; i < 1000; ++i) {
    const GeoPoint p(lon(rng), lat(rng));
    std::string prev;
    BoundingBox prev_cell = BoundingBox::world();
    for (int k = 1; k <= geohash::kMaxPrecision; ++k) {
      const std::string code = geohash::encode(p, k);
      CHECK(code.size() == static_cast<std::size_t>(k));
      CHECK(code.starts_with(prev));
      const BoundingBox cell = geohash::decode(code);
      CHECK(prev_cell.contains(cell));
      prev = code;
      prev_cell = cell;
    }
  }
}

TEST_CASE("bit and cell conversions are inverse") {
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> lon(-180, 180), lat(-90, 90);
  for (int i = 0; i < 500; ++i) {
    const int k = 1 + i % geohash::kMaxPrecision;
    const std::string code = geohash::encode(GeoPoint(lon(rng), lat(rng)), k);
    CHECK(geohash::from_bits(geohash::to_bits(code), k) == code);
    const geohash::Cell c = geohash::cell_of(code);
    CHECK(geohash::code_of(c, k) == code);
    CHECK(geohash::bits_of(c, k) == geohash::to_bits(code));
    CHECK(geohash::cell_box(c, k) == geohash::decode(code));
  }
  CHECK(geohash::lon_bits(1) == 3);
  CHECK(geohash::lat_bits(1) == 2);
  CHECK(geohash::lon_bits(12) + geohash::lat_bits(12) == 60);
}

TEST_CASE("cover of simple regions") {
  const auto world = geohash::cover(BoundingBox::world(), 1);
  CHECK(world.size() == 32);
  CHECK(std::set<std::string>(world.begin(), world.end()).size() == 32);
  CHECK(geohash::cover(geohash::decode("s"), 1) == std::vector<std::string>{"s"});
  CHECK(geohash::cover(geohash::decode("wx4g"), 4) == std::vector<std::string>{"wx4g"});
}

TEST_CASE("cover equals exhaustive enumeration at precision 3") {
  std::vector<std::string> all;
  const std::string alphabet(geohash::kAlphabet);
  for (char a : alphabet)
    for (char b : alphabet)
      for (char c : alphabet) all.push_back(std::string{a, b, c});

  std::mt19937_64 rng(24);
  std::uniform_real_distribution<double> lon(-180, 180), lat(-90, 90), edge(0, 30);
  for (int i = 0; i < 100; ++i) {
    const double x = lon(rng), y = lat(rng);
    const BoundingBox b(x, std::min(180.0, x + edge(rng)), y, std::min(90.0, y + edge(rng)));
    std::vector<std::string> expected;
    for (const auto& code : all) {
      const auto r = oracle::geohash_rect(code);
      if (oracle::boxes_touch(BoundingBox(r.min_lon, r.max_lon, r.min_lat, r.max_lat), b)) {
        expected.push_back(code);
      }
    }
    CHECK(geohash::cover(b, 3) == expected);
  }
}

TEST_CASE("touching range includes edge neighbours") {
  const BoundingBox s = geohash::decode("s");
  const auto cover = geohash::covering_range(s, 1);
  const auto touch = geohash::touching_range(s, 1);
  CHECK(cover.size() == 1);
  CHECK(touch.size() == 9);
}

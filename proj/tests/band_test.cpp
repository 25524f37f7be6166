// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "oracles.hpp"
#include "rasterix/band_grid.hpp"
#include "rasterix/error.hpp"

using namespace rasterix;

TEST_CASE("band file layout is little-endian MIXR") {
  BandGrid g("NIR", 2, 3);
  for (std::uint32_t i = 0; i < 6; ++i) g.values[i] = static_cast<float>(i) * 0.5f;
  g.set_nodata(1, 2);
  const auto bytes = encode_band(g);
  REQUIRE(bytes.size() == 4 + 2 + 4 + 4 + 6 * 4);
  CHECK(std::memcmp(bytes.data(), "MIXR", 4) == 0);
  CHECK(bytes[4] == 1);
  CHECK(bytes[5] == 0);
  CHECK(bytes[6] == 2);
  CHECK(bytes[10] == 3);
  // 0.5f = 0x3F000000, little endian.
  CHECK(bytes[18] == 0x00);
  CHECK(bytes[19] == 0x00);
  CHECK(bytes[20] == 0x00);
  CHECK(bytes[21] == 0x3F);
  float last;
  std::memcpy(&last, bytes.data() + 14 + 5 * 4, 4);
  CHECK(std::isnan(last));
}

TEST_CASE("band round trip is bit exact") {
  std::mt19937_64 rng(61);
  for (auto [rows, cols] : {std::pair{1u, 1u}, {1u, 7u}, {13u, 1u}, {64u, 48u}}) {
    BandGrid g = oracle::random_band("Red", rows, cols, rng, -5.0f, 5.0f);
    g.values[0] = -0.0f;
    if (g.size() > 2) g.set_nodata(rows - 1, cols - 1);
    const auto bytes = encode_band(g);
    const BandGrid back = decode_band(bytes, "Red");
    CHECK(back.same_pixels(g));
    CHECK(back.label == "Red");
    CHECK(std::signbit(back.values[0]));
    CHECK(encode_band(back) == bytes);
    CHECK(back.nodata_count() == g.nodata_count());
  }
}

TEST_CASE("bad band files are decode errors") {
  BandGrid g("Red", 2, 2);
  auto bytes = encode_band(g);
  auto expect_decode = [](std::vector<std::uint8_t> b) {
    try {
      decode_band(b, "x");
      FAIL("decoded a bad file");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Decode);
    }
  };
  auto bad_magic = bytes;
  bad_magic[0] = 'X';
  expect_decode(bad_magic);
  auto bad_version = bytes;
  bad_version[4] = 2;
  expect_decode(bad_version);
  auto truncated = bytes;
  truncated.pop_back();
  expect_decode(truncated);
  expect_decode({});
}

TEST_CASE("same_pixels compares mask and bits") {
  BandGrid a("a", 2, 2, 1.0f), b("b", 2, 2, 1.0f);
  CHECK(a.same_pixels(b));
  b.set_nodata(0, 0);
  CHECK_FALSE(a.same_pixels(b));
  a.set_nodata(0, 0);
  CHECK(a.same_pixels(b));
  a.set(1, 1, 2.0f);
  CHECK_FALSE(a.same_pixels(b));
  CHECK_FALSE(a.same_pixels(BandGrid("c", 1, 4, 1.0f)));
}

// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <cstdint>
#include <string_view>
#include <vector>

#include "rasterix/query.hpp"
#include "rasterix/range_index.hpp"
#include "rasterix/tile_store.hpp"

namespace rasterix::synth {

/// LandSat8-style band labels, in band order.
inline constexpr std::array<std::string_view, 10> kBandLabels = {
    "Coastal", "Blue", "Green", "Red", "NIR", "SWIR1", "SWIR2", "Pan", "Cirrus", "TIRS1"};

inline constexpr std::int64_t kEpoch2020 = 1'577'836'800;  // 2020-01-01T00:00:00Z
inline constexpr std::int64_t kDay = 86'400;

/// Row-major grid of equally sized tiles anchored at a south-west corner.
/// The default 1/16 degree pitch keeps every tile inside one degree cell.
struct TileLayout {
  double origin_lon = 116.0;
  double origin_lat = 39.0;
  double tile_deg = 1.0 / 16.0;
  std::uint32_t columns = 16;

  static TileLayout for_count(std::size_t count);

  BoundingBox tile_bbox(std::size_t index) const;
  /// Bounding box of the first `count` tiles.
  BoundingBox extent(std::size_t count) const;
};

struct SceneSpec {
  std::uint32_t size = 256;  // rows == cols
  std::uint32_t bands = 10;  // must include Red and NIR (>= 5)
  std::uint64_t seed = 1;
  std::string satellite = "LANDSAT_8";
};

/// Capture time of tile `index`: a seeded day in 2020 plus a seeded second.
std::int64_t capture_time(std::uint64_t seed, std::size_t index);

RasterScene make_scene(const TileLayout& layout, std::size_t index, const SceneSpec& spec);

/// Metadata-only tile records for index benchmarks.
std::vector<IndexEntry> make_entries(const TileLayout& layout, std::size_t count,
                                     std::uint64_t seed, std::string_view satellite = "LANDSAT_8");

/// Uniform random query rectangles with edges of 1-4 tile widths inside
/// `extent`, each with a random 30-365 day window over 2020.
std::vector<Query> make_queries(const BoundingBox& extent, double tile_deg, std::size_t count,
                                std::uint64_t seed, InfoKind info = InfoKind::NDVI);

}  // namespace rasterix::synth

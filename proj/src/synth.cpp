// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "rasterix/error.hpp"

namespace rasterix::synth {

namespace {

std::mt19937_64 rng_for(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

}  // namespace

TileLayout TileLayout::for_count(std::size_t count) {
  TileLayout layout;
  layout.columns = static_cast<std::uint32_t>(
      std::max<double>(1.0, std::ceil(std::sqrt(static_cast<double>(count)))));
  return layout;
}

BoundingBox TileLayout::tile_bbox(std::size_t index) const {
  const auto col = static_cast<double>(index % columns);
  const auto row = static_cast<double>(index / columns);
  const double lon = origin_lon + col * tile_deg;
  const double lat = origin_lat + row * tile_deg;
  return {lon, lon + tile_deg, lat, lat + tile_deg};
}

BoundingBox TileLayout::extent(std::size_t count) const {
  if (count == 0) return {origin_lon, origin_lon, origin_lat, origin_lat};
  const std::size_t rows = (count + columns - 1) / columns;
  const std::size_t cols = std::min<std::size_t>(count, columns);
  return {origin_lon, origin_lon + static_cast<double>(cols) * tile_deg, origin_lat,
          origin_lat + static_cast<double>(rows) * tile_deg};
}

std::int64_t capture_time(std::uint64_t seed, std::size_t index) {
  auto rng = rng_for(seed, 0x7113'0000'0000ULL + index);
  std::uniform_int_distribution<std::int64_t> day(0, 365);
  std::uniform_int_distribution<std::int64_t> second(0, kDay - 1);
  return kEpoch2020 + day(rng) * kDay + second(rng);
}

RasterScene make_scene(const TileLayout& layout, std::size_t index, const SceneSpec& spec) {
  if (spec.bands < 5 || spec.bands > kBandLabels.size()) {
    fail(ErrorCode::InvalidArgument, "synthetic scenes need 5-10 bands (Red and NIR included)");
  }
  if (spec.size == 0) fail(ErrorCode::InvalidArgument, "scene size must be positive");
  RasterScene scene;
  scene.rows = spec.size;
  scene.cols = spec.size;
  scene.bbox = layout.tile_bbox(index);
  scene.capture_time = capture_time(spec.seed, index);
  scene.satellite = spec.satellite;

  auto rng = rng_for(spec.seed, index);
  std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
  std::uniform_real_distribution<double> noise(-0.02, 0.02);
  for (std::uint32_t b = 0; b < spec.bands; ++b) {
    BandGrid grid(std::string(kBandLabels[b]), spec.size, spec.size);
    const double px = phase(rng);
    const double py = phase(rng);
    // Vegetation-like signal: NIR bright, Red dark, other bands in between.
    const double base = b == 4 ? 0.35 : (b == 3 ? 0.08 : 0.15);
    const double amp = b == 4 ? 0.2 : 0.06;
    for (std::uint32_t r = 0; r < spec.size; ++r) {
      for (std::uint32_t c = 0; c < spec.size; ++c) {
        const double u = static_cast<double>(c) / spec.size;
        const double v = static_cast<double>(r) / spec.size;
        const double value = base + amp * std::sin(2.0 * std::numbers::pi * u + px) *
                                        std::cos(2.0 * std::numbers::pi * v + py) +
                             noise(rng);
        grid.set(r, c, static_cast<float>(std::clamp(value, 0.0, 1.0)));
      }
    }
    scene.bands.push_back(std::move(grid));
  }
  return scene;
}

std::vector<IndexEntry> make_entries(const TileLayout& layout, std::size_t count,
                                     std::uint64_t seed, std::string_view satellite) {
  std::vector<IndexEntry> entries;
  entries.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const BoundingBox bbox = layout.tile_bbox(i);
    const std::int64_t t = capture_time(seed, i);
    entries.push_back({TileId::derive(bbox, t, std::string(satellite)), bbox,
                       TimeRange::instant(t)});
  }
  return entries;
}

std::vector<Query> make_queries(const BoundingBox& extent, double tile_deg, std::size_t count,
                                std::uint64_t seed, InfoKind info) {
  auto rng = rng_for(seed, 0x9E37'79B9'7F4A'7C15ULL);
  std::uniform_real_distribution<double> edge(tile_deg, 4.0 * tile_deg);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_int_distribution<std::int64_t> start(kEpoch2020 - 30 * kDay, kEpoch2020 + 365 * kDay);
  std::uniform_int_distribution<std::int64_t> span(30 * kDay, 365 * kDay);
  std::vector<Query> queries;
  queries.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const double w = std::min(edge(rng), extent.width());
    const double h = std::min(edge(rng), extent.height());
    const double lon = extent.min_lon() + unit(rng) * (extent.width() - w);
    const double lat = extent.min_lat() + unit(rng) * (extent.height() - h);
    const std::int64_t t0 = start(rng);
    queries.push_back(Query{BoundingBox(lon, lon + w, lat, lat + h), TimeRange(t0, t0 + span(rng)),
                            std::nullopt, info});
  }
  return queries;
}

}  // namespace rasterix::synth

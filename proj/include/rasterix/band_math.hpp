// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rasterix/band_grid.hpp"
#include "rasterix/query.hpp"
#include "rasterix/tile_store.hpp"

namespace rasterix {

inline constexpr std::string_view kNirBand = "NIR";
inline constexpr std::string_view kRedBand = "Red";

/// Pixel-wise vegetation index:
///   NDVI = (NIR - Red) / (NIR + Red)
///   RVI  = NIR / Red
///   DVI  = NIR - Red
/// A pixel becomes no-data when either input is no-data or negative, or when
/// the denominator is zero. Output keeps the input dimensions.
BandGrid compute_index(InfoKind kind, const BandGrid& nir, const BandGrid& red);

struct PixelSize {
  double lon = 0.0;
  double lat = 0.0;
  friend bool operator==(const PixelSize&, const PixelSize&) = default;
};

PixelSize pixel_size_of(const BoundingBox& bbox, std::uint32_t rows, std::uint32_t cols);

/// One tile's computed layer, placed by its metadata.
struct TileLayer {
  TileMetadata meta;
  BandGrid grid;
};

/// Georeferenced output grid. Row 0 is the northern edge of bbox.
struct Mosaic {
  BoundingBox bbox = BoundingBox::world();
  PixelSize pixel;
  BandGrid grid;
  std::vector<TileId> provenance;  // catalog order

  std::uint32_t rows() const noexcept { return grid.rows; }
  std::uint32_t cols() const noexcept { return grid.cols; }
};

struct MosaicOptions {
  /// Pixel size used when no tile contributes.
  std::optional<PixelSize> fallback_pixel;
  std::size_t max_pixels = std::size_t{1} << 26;
};

/// Pastes every layer into a grid covering q.bbox, snapped outward to the
/// layers' common pixel lattice. Layers are painted in catalog order, so on
/// overlap the newest capture (then the larger tile id) wins; no-data pixels
/// never overwrite data. Uncovered cells are no-data.
Mosaic assemble_mosaic(std::span<const TileLayer> layers, const Query& q,
                       const MosaicOptions& options = {});

}  // namespace rasterix

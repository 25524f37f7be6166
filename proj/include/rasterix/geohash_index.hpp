// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rasterix/geohash.hpp"
#include "rasterix/range_index.hpp"

namespace rasterix {

/// Sorted map from precision-P geohash cell to the tiles touching that cell,
/// stored as parallel sorted key / posting arrays.
class GeoHashIndex final : public RangeIndex {
 public:
  GeoHashIndex(std::vector<IndexEntry> entries, int precision);

  IndexKind kind() const noexcept override { return IndexKind::GeoHash; }
  using RangeIndex::query;
  std::optional<TileIdSet> query(const BoundingBox& box, const TimeRange& time,
                                 const CancelToken& cancel) const override;
  std::vector<std::uint8_t> serialize() const override;

  int precision() const noexcept { return precision_; }
  std::size_t cell_count() const noexcept { return keys_.size(); }

  /// Tiles filed under one code, empty if the cell holds nothing.
  std::vector<TileId> tiles_in(std::string_view code) const;

 private:
  int precision_;
  std::vector<std::uint64_t> keys_;     // sorted geohash bits
  std::vector<geohash::Cell> cells_;    // parallel to keys_
  std::vector<std::uint32_t> offsets_;  // keys_.size() + 1 posting offsets
  std::vector<std::uint32_t> postings_;
};

}  // namespace rasterix

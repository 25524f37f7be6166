// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rasterix/range_index.hpp"

namespace rasterix {

/// Global grid position: row counts southward from lat 90, col eastward from
/// lon -180, both in units of the cell size.
struct GridCell {
  std::int64_t row = 0;
  std::int64_t col = 0;
  friend bool operator==(const GridCell&, const GridCell&) = default;
};

/// Orthogonal list over the populated extent: a rows x cols array of cells,
/// each linked to its right (east) and down (south) neighbour. A tile is filed
/// in every cell its bbox touches.
class OrthoGridIndex final : public RangeIndex {
 public:
  struct Cell {
    std::int32_t right = -1;
    std::int32_t down = -1;
    std::vector<std::uint32_t> entries;
  };

  OrthoGridIndex(std::vector<IndexEntry> entries, double cell_deg);

  IndexKind kind() const noexcept override { return IndexKind::OrthoList; }
  using RangeIndex::query;
  std::optional<TileIdSet> query(const BoundingBox& box, const TimeRange& time,
                                 const CancelToken& cancel) const override;
  std::vector<std::uint8_t> serialize() const override;

  double cell_deg() const noexcept { return cell_deg_; }
  std::int64_t rows() const noexcept { return rows_; }
  std::int64_t cols() const noexcept { return cols_; }
  /// Global position of local cell (0, 0).
  GridCell origin() const noexcept { return {row0_, col0_}; }
  const std::vector<Cell>& cells() const noexcept { return cells_; }
  const Cell& at(std::int64_t row, std::int64_t col) const {
    return cells_[static_cast<std::size_t>(row * cols_ + col)];
  }
  BoundingBox cell_box(std::int64_t row, std::int64_t col) const;

  /// Global cell holding a point, with points on a line assigned to the cell
  /// east / south of it.
  static GridCell cell_for(const GeoPoint& p, double cell_deg);

 private:
  double cell_deg_;
  std::int64_t row0_ = 0;
  std::int64_t col0_ = 0;
  std::int64_t rows_ = 0;
  std::int64_t cols_ = 0;
  std::vector<Cell> cells_;
};

}  // namespace rasterix

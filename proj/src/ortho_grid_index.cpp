// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/ortho_grid_index.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rasterix/error.hpp"

namespace rasterix {

namespace {

// Grid lines along one axis: boundary(i) = origin + sign * i * step.
// Latitude runs with sign -1 so that row indices grow southward.
struct Lines {
  double origin;
  double sign;
  double step;

  double boundary(std::int64_t i) const { return origin + sign * static_cast<double>(i) * step; }
  // Position along the axis, increasing with i.
  double along(double v) const { return sign * (v - origin); }

  // Largest i whose line is at or before v.
  std::int64_t floor_index(double v) const {
    auto i = static_cast<std::int64_t>(std::floor(along(v) / step));
    while (along(boundary(i)) > along(v)) --i;
    while (along(boundary(i + 1)) <= along(v)) ++i;
    return i;
  }
  std::int64_t ceil_index(double v) const {
    const std::int64_t i = floor_index(v);
    return boundary(i) == v ? i : i + 1;
  }
};

struct IndexRange {
  std::int64_t lo;
  std::int64_t hi;
};

// Cells along one axis whose closed extent contains some of [a, b]
// (a before b along the axis).
IndexRange touching(const Lines& l, double a, double b) {
  return {l.ceil_index(a) - 1, l.floor_index(b)};
}

// Cells needed to cover [a, b].
IndexRange covering(const Lines& l, double a, double b) {
  const std::int64_t lo = l.floor_index(a);
  return {lo, std::max(lo, l.ceil_index(b) - 1)};
}

Lines lon_lines(double step) { return {-180.0, 1.0, step}; }
Lines lat_lines(double step) { return {90.0, -1.0, step}; }

}  // namespace

GridCell OrthoGridIndex::cell_for(const GeoPoint& p, double cell_deg) {
  return {lat_lines(cell_deg).floor_index(p.lat()), lon_lines(cell_deg).floor_index(p.lon())};
}

OrthoGridIndex::OrthoGridIndex(std::vector<IndexEntry> entries, double cell_deg)
    : RangeIndex(std::move(entries)), cell_deg_(cell_deg) {
  if (!(cell_deg > 0.0) || !std::isfinite(cell_deg)) {
    fail(ErrorCode::InvalidArgument, "grid cell size must be positive");
  }
  if (entries_.empty()) return;
  const Lines lon = lon_lines(cell_deg_);
  const Lines lat = lat_lines(cell_deg_);

  std::vector<std::pair<IndexRange, IndexRange>> spans;  // (rows, cols) per entry
  spans.reserve(entries_.size());
  std::int64_t r_lo = std::numeric_limits<std::int64_t>::max(), r_hi = std::numeric_limits<std::int64_t>::min();
  std::int64_t c_lo = r_lo, c_hi = r_hi;
  for (const IndexEntry& e : entries_) {
    const IndexRange rows = touching(lat, e.bbox.max_lat(), e.bbox.min_lat());
    const IndexRange cols = touching(lon, e.bbox.min_lon(), e.bbox.max_lon());
    r_lo = std::min(r_lo, rows.lo);
    r_hi = std::max(r_hi, rows.hi);
    c_lo = std::min(c_lo, cols.lo);
    c_hi = std::max(c_hi, cols.hi);
    spans.emplace_back(rows, cols);
  }
  row0_ = r_lo;
  col0_ = c_lo;
  rows_ = r_hi - r_lo + 1;
  cols_ = c_hi - c_lo + 1;
  cells_.resize(static_cast<std::size_t>(rows_ * cols_));
  for (std::int64_t i = 0; i < rows_; ++i) {
    for (std::int64_t j = 0; j < cols_; ++j) {
      Cell& c = cells_[static_cast<std::size_t>(i * cols_ + j)];
      if (j + 1 < cols_) c.right = static_cast<std::int32_t>(i * cols_ + j + 1);
      if (i + 1 < rows_) c.down = static_cast<std::int32_t>((i + 1) * cols_ + j);
    }
  }
  for (std::uint32_t pos = 0; pos < entries_.size(); ++pos) {
    const auto& [rows, cols] = spans[pos];
    for (std::int64_t r = rows.lo; r <= rows.hi; ++r) {
      for (std::int64_t c = cols.lo; c <= cols.hi; ++c) {
        cells_[static_cast<std::size_t>((r - row0_) * cols_ + (c - col0_))].entries.push_back(pos);
      }
    }
  }
}

BoundingBox OrthoGridIndex::cell_box(std::int64_t row, std::int64_t col) const {
  const Lines lon = lon_lines(cell_deg_);
  const Lines lat = lat_lines(cell_deg_);
  auto clamp_lon = [](double v) { return std::clamp(v, -180.0, 180.0); };
  auto clamp_lat = [](double v) { return std::clamp(v, -90.0, 90.0); };
  return {clamp_lon(lon.boundary(col0_ + col)), clamp_lon(lon.boundary(col0_ + col + 1)),
          clamp_lat(lat.boundary(row0_ + row + 1)), clamp_lat(lat.boundary(row0_ + row))};
}

std::optional<TileIdSet> OrthoGridIndex::query(const BoundingBox& box, const TimeRange& time,
                                               const CancelToken& cancel) const {
  if (cells_.empty()) return TileIdSet{};
  const IndexRange rows = covering(lat_lines(cell_deg_), box.max_lat(), box.min_lat());
  const IndexRange cols = covering(lon_lines(cell_deg_), box.min_lon(), box.max_lon());
  const std::int64_t r0 = std::max(rows.lo, row0_) - row0_;
  const std::int64_t r1 = std::min(rows.hi, row0_ + rows_ - 1) - row0_;
  const std::int64_t c0 = std::max(cols.lo, col0_) - col0_;
  const std::int64_t c1 = std::min(cols.hi, col0_ + cols_ - 1) - col0_;
  if (r0 > r1 || c0 > c1) return TileIdSet{};

  std::vector<std::uint32_t> candidates;
  auto row_head = static_cast<std::int32_t>(r0 * cols_ + c0);
  for (std::int64_t r = r0; r <= r1; ++r) {
    std::int32_t at = row_head;
    for (std::int64_t c = c0; c <= c1; ++c) {
      if (cancel.cancelled()) return std::nullopt;
      const Cell& cell = cells_[static_cast<std::size_t>(at)];
      candidates.insert(candidates.end(), cell.entries.begin(), cell.entries.end());
      at = cell.right;
    }
    row_head = cells_[static_cast<std::size_t>(row_head)].down;
  }
  return finish(candidates, box, time);
}

std::vector<std::uint8_t> OrthoGridIndex::serialize() const {
  detail::BlobWriter w;
  w.f64(cell_deg_);
  w.i64(row0_);
  w.i64(col0_);
  w.i64(rows_);
  w.i64(cols_);
  w.entries(entries_);
  for (const Cell& c : cells_) {
    w.i32(c.right);
    w.i32(c.down);
    w.u32(static_cast<std::uint32_t>(c.entries.size()));
    for (std::uint32_t pos : c.entries) w.u32(pos);
  }
  return w.finish("OGIX", 1);
}

}  // namespace rasterix

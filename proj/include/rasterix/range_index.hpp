// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "rasterix/geo.hpp"

namespace rasterix {

enum class IndexKind : std::uint8_t { GeoHash = 0, QuadTree = 1, OrthoList = 2 };

inline constexpr std::array<IndexKind, 3> kAllIndexKinds = {
    IndexKind::GeoHash, IndexKind::QuadTree, IndexKind::OrthoList};

std::string_view to_string(IndexKind kind);
IndexKind parse_index_kind(std::string_view name);

struct IndexEntry {
  TileId id;
  BoundingBox bbox;
  TimeRange time;
};

/// Sorted, duplicate-free tile ids.
using TileIdSet = std::vector<TileId>;

/// Cooperative cancellation flag shared between a race coordinator and the
/// index workers. Indexes poll it between node or cell visits.
class CancelToken {
 public:
  void cancel() noexcept { cancelled_.store(true, std::memory_order_release); }
  bool cancelled() const noexcept { return cancelled_.load(std::memory_order_acquire); }

  static const CancelToken& never();

 private:
  std::atomic<bool> cancelled_{false};
};

struct IndexParams {
  int geohash_precision = 5;
  int quadtree_leaf_capacity = 8;
  int quadtree_max_depth = 12;
  double grid_cell_deg = 1.0;
};

/// Contract shared by the three spatial indexes. Built once, immutable after,
/// safe for any number of concurrent readers.
class RangeIndex {
 public:
  virtual ~RangeIndex() = default;

  virtual IndexKind kind() const noexcept = 0;

  /// Tiles whose bbox intersects `box` and whose time overlaps `time`.
  /// Returns nullopt when `cancel` fires before the traversal finishes.
  virtual std::optional<TileIdSet> query(const BoundingBox& box, const TimeRange& time,
                                         const CancelToken& cancel) const = 0;

  TileIdSet query(const BoundingBox& box, const TimeRange& time) const;

  /// Versioned little-endian blob: 4-byte magic, u16 version, u64 payload
  /// length, payload.
  virtual std::vector<std::uint8_t> serialize() const = 0;

  std::size_t entry_count() const noexcept { return entries_.size(); }
  std::span<const IndexEntry> entries() const noexcept { return entries_; }
  std::chrono::nanoseconds build_time() const noexcept { return build_time_; }

 protected:
  explicit RangeIndex(std::vector<IndexEntry> entries);

  // Maps candidate positions in entries_ to a deduplicated id set, applying
  // the exact bbox/time predicate.
  TileIdSet finish(std::vector<std::uint32_t>& candidates, const BoundingBox& box,
                   const TimeRange& time) const;

  bool matches(std::uint32_t pos, const BoundingBox& box, const TimeRange& time) const {
    const IndexEntry& e = entries_[pos];
    return intersects(e.bbox, box) && overlaps_time(e.time, time);
  }

  std::vector<IndexEntry> entries_;
  std::chrono::nanoseconds build_time_{0};

  friend std::unique_ptr<RangeIndex> index_build(IndexKind, std::vector<IndexEntry>,
                                                 const IndexParams&);
};

/// Builds an index of the given kind. Duplicate tile ids raise an ingest
/// error.
std::unique_ptr<RangeIndex> index_build(IndexKind kind, std::vector<IndexEntry> entries,
                                        const IndexParams& params = {});

/// Reference answer by scanning every entry.
TileIdSet linear_scan(std::span<const IndexEntry> entries, const BoundingBox& box,
                      const TimeRange& time);

namespace detail {

/// Little-endian writer shared by the index serializers.
class BlobWriter {
 public:
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v);
  void u32(std::uint32_t v);
  void u64(std::uint64_t v);
  void i32(std::int32_t v) { u32(static_cast<std::uint32_t>(v)); }
  void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
  void f64(double v);
  void str(std::string_view s);
  void entries(std::span<const IndexEntry> entries);

  /// Wraps the payload with magic, version and length prefix.
  std::vector<std::uint8_t> finish(std::string_view magic, std::uint16_t version) const;

 private:
  std::vector<std::uint8_t> out_;
};

}  // namespace detail

}  // namespace rasterix

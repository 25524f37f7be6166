// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/range_index.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <unordered_set>

#include "rasterix/error.hpp"
#include "rasterix/geohash_index.hpp"
#include "rasterix/ortho_grid_index.hpp"
#include "rasterix/quadtree_index.hpp"

namespace rasterix {

std::string_view to_string(IndexKind kind) {
  switch (kind) {
    case IndexKind::GeoHash: return "geohash";
    case IndexKind::QuadTree: return "quadtree";
    case IndexKind::OrthoList: return "ortholist";
  }
  return "unknown";
}

IndexKind parse_index_kind(std::string_view name) {
  for (IndexKind k : kAllIndexKinds) {
    if (to_string(k) == name) return k;
  }
  fail(ErrorCode::InvalidArgument, "unknown index kind '" + std::string(name) + "'");
}

const CancelToken& CancelToken::never() {
  static const CancelToken token;
  return token;
}

RangeIndex::RangeIndex(std::vector<IndexEntry> entries) : entries_(std::move(entries)) {}

TileIdSet RangeIndex::query(const BoundingBox& box, const TimeRange& time) const {
  return *query(box, time, CancelToken::never());
}

TileIdSet RangeIndex::finish(std::vector<std::uint32_t>& candidates, const BoundingBox& box,
                             const TimeRange& time) const {
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  TileIdSet out;
  for (std::uint32_t pos : candidates) {
    if (matches(pos, box, time)) out.push_back(entries_[pos].id);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::unique_ptr<RangeIndex> index_build(IndexKind kind, std::vector<IndexEntry> entries,
                                        const IndexParams& params) {
  const auto start = std::chrono::steady_clock::now();
  {
    std::unordered_set<TileId> seen;
    seen.reserve(entries.size());
    for (const IndexEntry& e : entries) {
      if (!seen.insert(e.id).second) {
        fail(ErrorCode::Ingest, "duplicate tile id " + e.id.str() + " in index build");
      }
    }
  }
  std::unique_ptr<RangeIndex> index;
  switch (kind) {
    case IndexKind::GeoHash:
      index = std::make_unique<GeoHashIndex>(std::move(entries), params.geohash_precision);
      break;
    case IndexKind::QuadTree:
      index = std::make_unique<QuadTreeIndex>(std::move(entries), params.quadtree_leaf_capacity,
                                              params.quadtree_max_depth);
      break;
    case IndexKind::OrthoList:
      index = std::make_unique<OrthoGridIndex>(std::move(entries), params.grid_cell_deg);
      break;
  }
  index->build_time_ = std::chrono::steady_clock::now() - start;
  return index;
}

TileIdSet linear_scan(std::span<const IndexEntry> entries, const BoundingBox& box,
                      const TimeRange& time) {
  TileIdSet out;
  for (const IndexEntry& e : entries) {
    if (intersects(e.bbox, box) && overlaps_time(e.time, time)) out.push_back(e.id);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace detail {

void BlobWriter::u16(std::uint16_t v) {
  for (int i = 0; i < 2; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void BlobWriter::u32(std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void BlobWriter::u64(std::uint64_t v) {
  for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

void BlobWriter::f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }

void BlobWriter::str(std::string_view s) {
  u16(static_cast<std::uint16_t>(s.size()));
  out_.insert(out_.end(), s.begin(), s.end());
}

void BlobWriter::entries(std::span<const IndexEntry> entries) {
  u32(static_cast<std::uint32_t>(entries.size()));
  for (const IndexEntry& e : entries) {
    str(e.id.str());
    f64(e.bbox.min_lon());
    f64(e.bbox.max_lon());
    f64(e.bbox.min_lat());
    f64(e.bbox.max_lat());
    i64(e.time.start());
    i64(e.time.end());
  }
}

std::vector<std::uint8_t> BlobWriter::finish(std::string_view magic,
                                             std::uint16_t version) const {
  BlobWriter head;
  for (char c : magic) head.u8(static_cast<std::uint8_t>(c));
  head.u16(version);
  head.u64(out_.size());
  std::vector<std::uint8_t> blob = std::move(head.out_);
  blob.insert(blob.end(), out_.begin(), out_.end());
  return blob;
}

}  // namespace detail

}  // namespace rasterix

// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/geohash_index.hpp"

#include <algorithm>
#include <utility>

namespace rasterix {

GeoHashIndex::GeoHashIndex(std::vector<IndexEntry> entries, int precision)
    : RangeIndex(std::move(entries)), precision_(precision) {
  std::vector<std::pair<std::uint64_t, std::uint32_t>> pairs;
  for (std::uint32_t pos = 0; pos < entries_.size(); ++pos) {
    const auto r = geohash::touching_range(entries_[pos].bbox, precision_);
    for (std::uint32_t x = r.x0; x <= r.x1; ++x) {
      for (std::uint32_t y = r.y0; y <= r.y1; ++y) {
        pairs.emplace_back(geohash::bits_of({x, y}, precision_), pos);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  postings_.reserve(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    if (i == 0 || pairs[i].first != pairs[i - 1].first) {
      keys_.push_back(pairs[i].first);
      offsets_.push_back(static_cast<std::uint32_t>(postings_.size()));
    }
    postings_.push_back(pairs[i].second);
  }
  offsets_.push_back(static_cast<std::uint32_t>(postings_.size()));
  cells_.reserve(keys_.size());
  for (std::uint64_t key : keys_) {
    cells_.push_back(geohash::cell_of(geohash::from_bits(key, precision_)));
  }
}

std::optional<TileIdSet> GeoHashIndex::query(const BoundingBox& box, const TimeRange& time,
                                             const CancelToken& cancel) const {
  std::vector<std::uint32_t> candidates;
  if (keys_.empty()) return TileIdSet{};
  const geohash::CellRange r = geohash::covering_range(box, precision_);
  auto take = [&](std::size_t k) {
    candidates.insert(candidates.end(), postings_.begin() + offsets_[k],
                      postings_.begin() + offsets_[k + 1]);
  };
  if (r.size() > keys_.size()) {
    // Query spans more cells than are occupied: walk the occupied ones.
    for (std::size_t k = 0; k < keys_.size(); ++k) {
      if (cancel.cancelled()) return std::nullopt;
      const geohash::Cell c = cells_[k];
      if (c.x >= r.x0 && c.x <= r.x1 && c.y >= r.y0 && c.y <= r.y1) take(k);
    }
  } else {
    for (std::uint32_t x = r.x0; x <= r.x1; ++x) {
      for (std::uint32_t y = r.y0; y <= r.y1; ++y) {
        if (cancel.cancelled()) return std::nullopt;
        const std::uint64_t key = geohash::bits_of({x, y}, precision_);
        const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
        if (it != keys_.end() && *it == key) take(static_cast<std::size_t>(it - keys_.begin()));
      }
    }
  }
  return finish(candidates, box, time);
}

std::vector<TileId> GeoHashIndex::tiles_in(std::string_view code) const {
  std::vector<TileId> out;
  const std::uint64_t key = geohash::to_bits(code);
  const auto it = std::lower_bound(keys_.begin(), keys_.end(), key);
  if (it == keys_.end() || *it != key || code.size() != static_cast<std::size_t>(precision_)) {
    return out;
  }
  const auto k = static_cast<std::size_t>(it - keys_.begin());
  for (std::uint32_t i = offsets_[k]; i < offsets_[k + 1]; ++i) {
    out.push_back(entries_[postings_[i]].id);
  }
  return out;
}

std::vector<std::uint8_t> GeoHashIndex::serialize() const {
  detail::BlobWriter w;
  w.u8(static_cast<std::uint8_t>(precision_));
  w.entries(entries_);
  w.u32(static_cast<std::uint32_t>(keys_.size()));
  for (std::size_t k = 0; k < keys_.size(); ++k) {
    w.u64(keys_[k]);
    w.u32(offsets_[k + 1] - offsets_[k]);
    for (std::uint32_t i = offsets_[k]; i < offsets_[k + 1]; ++i) w.u32(postings_[i]);
  }
  return w.finish("GHIX", 1);
}

}  // namespace rasterix

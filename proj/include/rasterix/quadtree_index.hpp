// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

#include "rasterix/range_index.hpp"

namespace rasterix {

enum class Quadrant : std::uint8_t { NW = 0, NE = 1, SW = 2, SE = 3 };

std::string_view to_string(Quadrant q);

/// Exact quadrant of a parent box (equal bisection in lon and lat).
BoundingBox quadrant_box(const BoundingBox& parent, Quadrant q);

/// Region quadtree over the whole world box. Leaves split on overflow; an
/// entry that crosses a split line stays at the deepest node containing it.
class QuadTreeIndex final : public RangeIndex {
 public:
  struct Node {
    BoundingBox bbox;
    int depth = 0;
    std::array<std::int32_t, 4> children{-1, -1, -1, -1};  // NW, NE, SW, SE
    std::vector<std::uint32_t> entries;

    bool is_leaf() const noexcept { return children[0] < 0; }
  };

  QuadTreeIndex(std::vector<IndexEntry> entries, int leaf_capacity, int max_depth);

  IndexKind kind() const noexcept override { return IndexKind::QuadTree; }
  using RangeIndex::query;
  std::optional<TileIdSet> query(const BoundingBox& box, const TimeRange& time,
                                 const CancelToken& cancel) const override;
  std::vector<std::uint8_t> serialize() const override;

  const std::vector<Node>& nodes() const noexcept { return nodes_; }
  int leaf_capacity() const noexcept { return leaf_capacity_; }
  int max_depth() const noexcept { return max_depth_; }

  /// Quadrant path ("NE.SW...") of the deepest world-quadtree node, at most
  /// `max_depth` levels down, that fully contains `bbox`. Empty for the root.
  static std::string path_for(const BoundingBox& bbox, int max_depth);

 private:
  void insert(std::int32_t node, std::uint32_t pos);
  void split(std::int32_t node);
  std::int32_t child_containing(std::int32_t node, const BoundingBox& bbox) const;

  int leaf_capacity_;
  int max_depth_;
  std::vector<Node> nodes_;
};

}  // namespace rasterix

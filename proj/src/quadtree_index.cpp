// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/quadtree_index.hpp"

#include "rasterix/error.hpp"

namespace rasterix {

std::string_view to_string(Quadrant q) {
  switch (q) {
    case Quadrant::NW: return "NW";
    case Quadrant::NE: return "NE";
    case Quadrant::SW: return "SW";
    case Quadrant::SE: return "SE";
  }
  return "??";
}

BoundingBox quadrant_box(const BoundingBox& p, Quadrant q) {
  const double mid_lon = (p.min_lon() + p.max_lon()) / 2.0;
  const double mid_lat = (p.min_lat() + p.max_lat()) / 2.0;
  switch (q) {
    case Quadrant::NW: return {p.min_lon(), mid_lon, mid_lat, p.max_lat()};
    case Quadrant::NE: return {mid_lon, p.max_lon(), mid_lat, p.max_lat()};
    case Quadrant::SW: return {p.min_lon(), mid_lon, p.min_lat(), mid_lat};
    case Quadrant::SE: return {mid_lon, p.max_lon(), p.min_lat(), mid_lat};
  }
  return p;
}

QuadTreeIndex::QuadTreeIndex(std::vector<IndexEntry> entries, int leaf_capacity, int max_depth)
    : RangeIndex(std::move(entries)), leaf_capacity_(leaf_capacity), max_depth_(max_depth) {
  if (leaf_capacity < 1 || max_depth < 0) {
    fail(ErrorCode::InvalidArgument, "quadtree needs leaf_capacity >= 1 and max_depth >= 0");
  }
  nodes_.push_back(Node{BoundingBox::world(), 0, {-1, -1, -1, -1}, {}});
  for (std::uint32_t pos = 0; pos < entries_.size(); ++pos) insert(0, pos);
}

std::int32_t QuadTreeIndex::child_containing(std::int32_t node, const BoundingBox& bbox) const {
  for (std::int32_t child : nodes_[static_cast<std::size_t>(node)].children) {
    if (nodes_[static_cast<std::size_t>(child)].bbox.contains(bbox)) return child;
  }
  return -1;
}

void QuadTreeIndex::insert(std::int32_t node, std::uint32_t pos) {
  while (!nodes_[static_cast<std::size_t>(node)].is_leaf()) {
    const std::int32_t child = child_containing(node, entries_[pos].bbox);
    if (child < 0) break;
    node = child;
  }
  Node& n = nodes_[static_cast<std::size_t>(node)];
  n.entries.push_back(pos);
  if (n.is_leaf() && n.entries.size() > static_cast<std::size_t>(leaf_capacity_) &&
      n.depth < max_depth_) {
    split(node);
  }
}

void QuadTreeIndex::split(std::int32_t node) {
  const BoundingBox parent = nodes_[static_cast<std::size_t>(node)].bbox;
  const int depth = nodes_[static_cast<std::size_t>(node)].depth + 1;
  for (int q = 0; q < 4; ++q) {
    const auto child = static_cast<std::int32_t>(nodes_.size());
    nodes_.push_back(Node{quadrant_box(parent, static_cast<Quadrant>(q)), depth,
                          {-1, -1, -1, -1}, {}});
    nodes_[static_cast<std::size_t>(node)].children[static_cast<std::size_t>(q)] = child;
  }
  std::vector<std::uint32_t> pending;
  pending.swap(nodes_[static_cast<std::size_t>(node)].entries);
  for (std::uint32_t pos : pending) {
    const std::int32_t child = child_containing(node, entries_[pos].bbox);
    if (child < 0) {
      nodes_[static_cast<std::size_t>(node)].entries.push_back(pos);
    } else {
      insert(child, pos);
    }
  }
}

std::optional<TileIdSet> QuadTreeIndex::query(const BoundingBox& box, const TimeRange& time,
                                              const CancelToken& cancel) const {
  std::vector<std::uint32_t> candidates;
  std::vector<std::int32_t> stack{0};
  while (!stack.empty()) {
    if (cancel.cancelled()) return std::nullopt;
    const Node& n = nodes_[static_cast<std::size_t>(stack.back())];
    stack.pop_back();
    if (!intersects(n.bbox, box)) continue;
    candidates.insert(candidates.end(), n.entries.begin(), n.entries.end());
    if (!n.is_leaf()) stack.insert(stack.end(), n.children.rbegin(), n.children.rend());
  }
  return finish(candidates, box, time);
}

std::string QuadTreeIndex::path_for(const BoundingBox& bbox, int max_depth) {
  std::string path;
  BoundingBox node = BoundingBox::world();
  for (int depth = 0; depth < max_depth; ++depth) {
    bool descended = false;
    for (int q = 0; q < 4; ++q) {
      const BoundingBox child = quadrant_box(node, static_cast<Quadrant>(q));
      if (child.contains(bbox)) {
        if (!path.empty()) path.push_back('.');
        path.append(to_string(static_cast<Quadrant>(q)));
        node = child;
        descended = true;
        break;
      }
    }
    if (!descended) break;
  }
  return path;
}

std::vector<std::uint8_t> QuadTreeIndex::serialize() const {
  detail::BlobWriter w;
  w.u32(static_cast<std::uint32_t>(leaf_capacity_));
  w.u32(static_cast<std::uint32_t>(max_depth_));
  w.entries(entries_);
  w.u32(static_cast<std::uint32_t>(nodes_.size()));
  for (const Node& n : nodes_) {
    w.f64(n.bbox.min_lon());
    w.f64(n.bbox.max_lon());
    w.f64(n.bbox.min_lat());
    w.f64(n.bbox.max_lat());
    w.u8(static_cast<std::uint8_t>(n.depth));
    for (std::int32_t c : n.children) w.i32(c);
    w.u32(static_cast<std::uint32_t>(n.entries.size()));
    for (std::uint32_t pos : n.entries) w.u32(pos);
  }
  return w.finish("QTIX", 1);
}

}  // namespace rasterix

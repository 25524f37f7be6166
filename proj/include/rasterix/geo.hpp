// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <ostream>
#include <string>

namespace rasterix {

/// A lon/lat position in plate-carree degrees. Construction rejects
/// non-finite or out-of-range coordinates.
class GeoPoint {
 public:
  GeoPoint(double lon, double lat);

  double lon() const noexcept { return lon_; }
  double lat() const noexcept { return lat_; }

  friend bool operator==(const GeoPoint&, const GeoPoint&) = default;

 private:
  double lon_;
  double lat_;
};

/// Closed lon/lat rectangle. Longitude never wraps across the antimeridian.
class BoundingBox {
 public:
  BoundingBox(double min_lon, double max_lon, double min_lat, double max_lat);

  static BoundingBox world();

  double min_lon() const noexcept { return min_lon_; }
  double max_lon() const noexcept { return max_lon_; }
  double min_lat() const noexcept { return min_lat_; }
  double max_lat() const noexcept { return max_lat_; }

  double width() const noexcept { return max_lon_ - min_lon_; }
  double height() const noexcept { return max_lat_ - min_lat_; }
  GeoPoint center() const;

  bool contains(const GeoPoint& p) const noexcept;
  bool contains(const BoundingBox& other) const noexcept;

  friend bool operator==(const BoundingBox&, const BoundingBox&) = default;

 private:
  double min_lon_;
  double max_lon_;
  double min_lat_;
  double max_lat_;
};

std::ostream& operator<<(std::ostream& os, const BoundingBox& b);

/// Closed interval of UTC epoch seconds.
class TimeRange {
 public:
  TimeRange(std::int64_t start, std::int64_t end);

  std::int64_t start() const noexcept { return start_; }
  std::int64_t end() const noexcept { return end_; }

  static TimeRange instant(std::int64_t t) { return {t, t}; }
  static TimeRange all();

  friend bool operator==(const TimeRange&, const TimeRange&) = default;

 private:
  std::int64_t start_;
  std::int64_t end_;
};

/// Opaque tile identifier, derived deterministically from the tile's
/// footprint, capture time and satellite.
class TileId {
 public:
  TileId() = default;
  explicit TileId(std::string value) : value_(std::move(value)) {}

  static TileId derive(const BoundingBox& bbox, std::int64_t capture_time,
                       const std::string& satellite);

  const std::string& str() const noexcept { return value_; }
  bool empty() const noexcept { return value_.empty(); }

  friend auto operator<=>(const TileId&, const TileId&) = default;
  friend bool operator==(const TileId&, const TileId&) = default;

 private:
  std::string value_;
};

std::ostream& operator<<(std::ostream& os, const TileId& id);

/// Closed-box intersection: shared edges and corners count.
bool intersects(const BoundingBox& a, const BoundingBox& b) noexcept;

/// Closed-interval overlap: max(start) <= min(end).
bool overlaps_time(const TimeRange& a, const TimeRange& b) noexcept;

}  // namespace rasterix

template <>
struct std::hash<rasterix::TileId> {
  std::size_t operator()(const rasterix::TileId& id) const noexcept {
    return std::hash<std::string>{}(id.str());
  }
};

// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/geo.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "rasterix/checksum.hpp"
#include "rasterix/error.hpp"

namespace rasterix {

namespace {

void check_lon(double lon) {
  if (!std::isfinite(lon) || lon < -180.0 || lon > 180.0) {
    std::ostringstream msg;
    msg << "longitude " << lon << " outside [-180, 180]";
    fail(ErrorCode::InvalidArgument, msg.str());
  }
}

void check_lat(double lat) {
  if (!std::isfinite(lat) || lat < -90.0 || lat > 90.0) {
    std::ostringstream msg;
    msg << "latitude " << lat << " outside [-90, 90]";
    fail(ErrorCode::InvalidArgument, msg.str());
  }
}

}  // namespace

GeoPoint::GeoPoint(double lon, double lat) : lon_(lon), lat_(lat) {
  check_lon(lon);
  check_lat(lat);
}

BoundingBox::BoundingBox(double min_lon, double max_lon, double min_lat, double max_lat)
    : min_lon_(min_lon), max_lon_(max_lon), min_lat_(min_lat), max_lat_(max_lat) {
  check_lon(min_lon);
  check_lon(max_lon);
  check_lat(min_lat);
  check_lat(max_lat);
  if (min_lon > max_lon) {
    std::ostringstream msg;
    msg << "min_lon " << min_lon << " > max_lon " << max_lon;
    fail(ErrorCode::InvalidArgument, msg.str());
  }
  if (min_lat > max_lat) {
    std::ostringstream msg;
    msg << "min_lat " << min_lat << " > max_lat " << max_lat;
    fail(ErrorCode::InvalidArgument, msg.str());
  }
}

BoundingBox BoundingBox::world() { return {-180.0, 180.0, -90.0, 90.0}; }

GeoPoint BoundingBox::center() const {
  return {min_lon_ + (max_lon_ - min_lon_) / 2.0, min_lat_ + (max_lat_ - min_lat_) / 2.0};
}

bool BoundingBox::contains(const GeoPoint& p) const noexcept {
  return p.lon() >= min_lon_ && p.lon() <= max_lon_ && p.lat() >= min_lat_ &&
         p.lat() <= max_lat_;
}

bool BoundingBox::contains(const BoundingBox& o) const noexcept {
  return o.min_lon_ >= min_lon_ && o.max_lon_ <= max_lon_ && o.min_lat_ >= min_lat_ &&
         o.max_lat_ <= max_lat_;
}

std::ostream& operator<<(std::ostream& os, const BoundingBox& b) {
  return os << "[" << b.min_lon() << "," << b.max_lon() << "]x[" << b.min_lat() << ","
            << b.max_lat() << "]";
}

TimeRange::TimeRange(std::int64_t start, std::int64_t end) : start_(start), end_(end) {
  if (start > end) {
    fail(ErrorCode::InvalidArgument,
         "time range start " + std::to_string(start) + " > end " + std::to_string(end));
  }
}

TimeRange TimeRange::all() {
  return {std::numeric_limits<std::int64_t>::min(), std::numeric_limits<std::int64_t>::max()};
}

TileId TileId::derive(const BoundingBox& bbox, std::int64_t capture_time,
                      const std::string& satellite) {
  // %a keeps the exact binary value of every coordinate in the key.
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%a|%a|%a|%a|%lld|", bbox.min_lon(), bbox.max_lon(),
                bbox.min_lat(), bbox.max_lat(), static_cast<long long>(capture_time));
  return TileId(sha256_hex(std::string(buf) + satellite).substr(0, 20));
}

std::ostream& operator<<(std::ostream& os, const TileId& id) { return os << id.str(); }

bool intersects(const BoundingBox& a, const BoundingBox& b) noexcept {
  return a.min_lon() <= b.max_lon() && b.min_lon() <= a.max_lon() &&
         a.min_lat() <= b.max_lat() && b.min_lat() <= a.max_lat();
}

bool overlaps_time(const TimeRange& a, const TimeRange& b) noexcept {
  return std::max(a.start(), b.start()) <= std::min(a.end(), b.end());
}

}  // namespace rasterix

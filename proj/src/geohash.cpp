// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/geohash.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include "rasterix/error.hpp"

namespace rasterix::geohash {

namespace {

void check_precision(int precision) {
  if (precision < 1 || precision > kMaxPrecision) {
    fail(ErrorCode::InvalidArgument,
         "geohash precision " + std::to_string(precision) + " outside [1, 12]");
  }
}

constexpr std::array<int, 128> make_decode_table() {
  std::array<int, 128> table{};
  for (auto& v : table) v = -1;
  for (int i = 0; i < 32; ++i) table[static_cast<unsigned char>(kAlphabet[i])] = i;
  return table;
}

constexpr auto kDecodeTable = make_decode_table();

// One axis of the cell lattice: 2^bits cells spanning [origin, origin + span].
struct Axis {
  double origin;
  double span;
  int bits;

  std::uint32_t count() const { return std::uint32_t{1} << bits; }
  double width() const { return std::ldexp(span, -bits); }
  // Exact: the width is a power-of-two fraction of 360 or 180.
  double boundary(std::int64_t i) const { return origin + static_cast<double>(i) * width(); }

  // Largest i with boundary(i) <= v.
  std::int64_t floor_index(double v) const {
    auto i = static_cast<std::int64_t>(std::floor((v - origin) / width()));
    while (i > 0 && boundary(i) > v) --i;
    while (boundary(i + 1) <= v) ++i;
    return i;
  }

  // Smallest i with boundary(i) >= v.
  std::int64_t ceil_index(double v) const {
    std::int64_t i = floor_index(v);
    return boundary(i) == v ? i : i + 1;
  }

  std::uint32_t clamp(std::int64_t i) const {
    return static_cast<std::uint32_t>(std::clamp<std::int64_t>(i, 0, count() - 1));
  }
};

Axis lon_axis(int precision) { return {-180.0, 360.0, lon_bits(precision)}; }
Axis lat_axis(int precision) { return {-90.0, 180.0, lat_bits(precision)}; }

}  // namespace

int lon_bits(int precision) { return (precision * kBitsPerChar + 1) / 2; }
int lat_bits(int precision) { return (precision * kBitsPerChar) / 2; }

std::string encode(const GeoPoint& p, int precision) {
  check_precision(precision);
  double lon_lo = -180.0, lon_hi = 180.0;
  double lat_lo = -90.0, lat_hi = 90.0;
  std::string code;
  code.reserve(static_cast<std::size_t>(precision));
  bool even = true;
  int bit = 0;
  int ch = 0;
  while (static_cast<int>(code.size()) < precision) {
    if (even) {
      const double mid = (lon_lo + lon_hi) / 2.0;
      if (p.lon() >= mid) {
        ch = (ch << 1) | 1;
        lon_lo = mid;
      } else {
        ch <<= 1;
        lon_hi = mid;
      }
    } else {
      const double mid = (lat_lo + lat_hi) / 2.0;
      if (p.lat() >= mid) {
        ch = (ch << 1) | 1;
        lat_lo = mid;
      } else {
        ch <<= 1;
        lat_hi = mid;
      }
    }
    even = !even;
    if (++bit == kBitsPerChar) {
      code.push_back(kAlphabet[static_cast<std::size_t>(ch)]);
      bit = 0;
      ch = 0;
    }
  }
  return code;
}

std::uint64_t to_bits(std::string_view code) {
  if (code.empty()) fail(ErrorCode::Decode, "empty geohash");
  if (code.size() > static_cast<std::size_t>(kMaxPrecision)) {
    fail(ErrorCode::Decode, "geohash longer than 12 characters");
  }
  std::uint64_t bits = 0;
  for (char c : code) {
    const auto u = static_cast<unsigned char>(c);
    const int v = u < 128 ? kDecodeTable[u] : -1;
    if (v < 0) fail(ErrorCode::Decode, std::string("invalid geohash character '") + c + "'");
    bits = (bits << kBitsPerChar) | static_cast<std::uint64_t>(v);
  }
  return bits;
}

std::string from_bits(std::uint64_t bits, int precision) {
  check_precision(precision);
  std::string code(static_cast<std::size_t>(precision), '0');
  for (int i = precision - 1; i >= 0; --i) {
    code[static_cast<std::size_t>(i)] = kAlphabet[bits & 0x1F];
    bits >>= kBitsPerChar;
  }
  return code;
}

Cell cell_of(std::string_view code) {
  const std::uint64_t bits = to_bits(code);
  const int n = static_cast<int>(code.size()) * kBitsPerChar;
  Cell cell;
  for (int i = 0; i < n; ++i) {
    const auto b = static_cast<std::uint32_t>((bits >> (n - 1 - i)) & 1U);
    if (i % 2 == 0) {
      cell.x = (cell.x << 1) | b;
    } else {
      cell.y = (cell.y << 1) | b;
    }
  }
  return cell;
}

std::uint64_t bits_of(Cell cell, int precision) {
  const int n = precision * kBitsPerChar;
  int xb = lon_bits(precision);
  int yb = lat_bits(precision);
  std::uint64_t bits = 0;
  for (int i = 0; i < n; ++i) {
    std::uint64_t b;
    if (i % 2 == 0) {
      b = (cell.x >> --xb) & 1U;
    } else {
      b = (cell.y >> --yb) & 1U;
    }
    bits = (bits << 1) | b;
  }
  return bits;
}

std::string code_of(Cell cell, int precision) {
  return from_bits(bits_of(cell, precision), precision);
}

BoundingBox cell_box(Cell cell, int precision) {
  const Axis lon = lon_axis(precision);
  const Axis lat = lat_axis(precision);
  return {lon.boundary(cell.x), lon.boundary(std::int64_t{cell.x} + 1), lat.boundary(cell.y),
          lat.boundary(std::int64_t{cell.y} + 1)};
}

BoundingBox decode(std::string_view code) {
  const Cell cell = cell_of(code);
  return cell_box(cell, static_cast<int>(code.size()));
}

CellRange covering_range(const BoundingBox& b, int precision) {
  check_precision(precision);
  const Axis lon = lon_axis(precision);
  const Axis lat = lat_axis(precision);
  const std::uint32_t x0 = lon.clamp(lon.floor_index(b.min_lon()));
  const std::uint32_t y0 = lat.clamp(lat.floor_index(b.min_lat()));
  const std::uint32_t x1 = std::max(x0, lon.clamp(lon.ceil_index(b.max_lon()) - 1));
  const std::uint32_t y1 = std::max(y0, lat.clamp(lat.ceil_index(b.max_lat()) - 1));
  return {x0, x1, y0, y1};
}

CellRange touching_range(const BoundingBox& b, int precision) {
  check_precision(precision);
  const Axis lon = lon_axis(precision);
  const Axis lat = lat_axis(precision);
  return {lon.clamp(lon.ceil_index(b.min_lon()) - 1), lon.clamp(lon.floor_index(b.max_lon())),
          lat.clamp(lat.ceil_index(b.min_lat()) - 1), lat.clamp(lat.floor_index(b.max_lat()))};
}

std::vector<std::string> cover(const BoundingBox& b, int precision) {
  const CellRange r = covering_range(b, precision);
  std::vector<std::string> codes;
  codes.reserve(r.size());
  for (std::uint32_t x = r.x0; x <= r.x1; ++x) {
    for (std::uint32_t y = r.y0; y <= r.y1; ++y) codes.push_back(code_of({x, y}, precision));
  }
  std::sort(codes.begin(), codes.end());
  return codes;
}

}  // namespace rasterix::geohash

// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "rasterix/geo.hpp"

namespace rasterix::geohash {

inline constexpr std::string_view kAlphabet = "0123456789bcdefghjkmnpqrstuvwxyz";
inline constexpr int kMaxPrecision = 12;
inline constexpr int kBitsPerChar = 5;

/// Integer cell coordinates of a geohash cell at a fixed precision.
/// x counts longitude cells eastward from -180, y latitude cells northward
/// from -90.
struct Cell {
  std::uint32_t x = 0;
  std::uint32_t y = 0;
  friend bool operator==(const Cell&, const Cell&) = default;
};

int lon_bits(int precision);
int lat_bits(int precision);

/// Alternating lon/lat bisection (longitude first), 5 bits per character.
std::string encode(const GeoPoint& p, int precision);

/// The exact closed cell a code denotes. Rejects empty codes and characters
/// outside the alphabet.
BoundingBox decode(std::string_view code);

/// Packed interleaved bits of a code (5 * precision significant bits).
std::uint64_t to_bits(std::string_view code);
std::string from_bits(std::uint64_t bits, int precision);

Cell cell_of(std::string_view code);
std::string code_of(Cell cell, int precision);
std::uint64_t bits_of(Cell cell, int precision);
BoundingBox cell_box(Cell cell, int precision);

/// Inclusive range of cells at one precision.
struct CellRange {
  std::uint32_t x0, x1, y0, y1;
  std::size_t size() const {
    return static_cast<std::size_t>(x1 - x0 + 1) * static_cast<std::size_t>(y1 - y0 + 1);
  }
};

/// Smallest cell range whose union covers b.
CellRange covering_range(const BoundingBox& b, int precision);

/// Every cell whose closed extent intersects b, including cells that only
/// touch b along an edge.
CellRange touching_range(const BoundingBox& b, int precision);

/// Minimal set of precision-`precision` codes covering b, sorted.
std::vector<std::string> cover(const BoundingBox& b, int precision);

}  // namespace rasterix::geohash

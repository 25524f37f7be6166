// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rasterix {

/// One 2-D band: row-major float32 values plus a no-data mask of the same
/// shape. Row 0 is the northern edge.
struct BandGrid {
  std::string label;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<float> values;
  std::vector<std::uint8_t> nodata;

  BandGrid() = default;
  BandGrid(std::string label, std::uint32_t rows, std::uint32_t cols, float fill = 0.0f);

  std::size_t size() const noexcept { return values.size(); }
  std::size_t offset(std::uint32_t r, std::uint32_t c) const noexcept {
    return static_cast<std::size_t>(r) * cols + c;
  }
  float at(std::uint32_t r, std::uint32_t c) const { return values[offset(r, c)]; }
  bool is_nodata(std::uint32_t r, std::uint32_t c) const { return nodata[offset(r, c)] != 0; }
  void set(std::uint32_t r, std::uint32_t c, float v);
  void set_nodata(std::uint32_t r, std::uint32_t c);
  std::size_t nodata_count() const;

  /// Dimensions, mask and bit patterns of data pixels all equal.
  bool same_pixels(const BandGrid& other) const;
};

inline constexpr char kBandMagic[4] = {'M', 'I', 'X', 'R'};
inline constexpr std::uint16_t kBandFormatVersion = 1;

/// "MIXR", u16 version, u32 rows, u32 cols, rows*cols float32, all little
/// endian. No-data pixels are written as quiet NaN.
std::vector<std::uint8_t> encode_band(const BandGrid& grid);

/// Inverse of encode_band; NaN pixels come back flagged as no-data.
BandGrid decode_band(std::span<const std::uint8_t> bytes, std::string label);

}  // namespace rasterix

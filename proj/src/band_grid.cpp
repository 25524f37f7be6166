// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/band_grid.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <limits>

#include "rasterix/error.hpp"

namespace rasterix {

BandGrid::BandGrid(std::string label_, std::uint32_t rows_, std::uint32_t cols_, float fill)
    : label(std::move(label_)),
      rows(rows_),
      cols(cols_),
      values(static_cast<std::size_t>(rows_) * cols_, fill),
      nodata(static_cast<std::size_t>(rows_) * cols_, 0) {}

void BandGrid::set(std::uint32_t r, std::uint32_t c, float v) {
  values[offset(r, c)] = v;
  nodata[offset(r, c)] = 0;
}

void BandGrid::set_nodata(std::uint32_t r, std::uint32_t c) {
  values[offset(r, c)] = std::numeric_limits<float>::quiet_NaN();
  nodata[offset(r, c)] = 1;
}

std::size_t BandGrid::nodata_count() const {
  std::size_t n = 0;
  for (auto m : nodata) n += m != 0;
  return n;
}

bool BandGrid::same_pixels(const BandGrid& o) const {
  if (rows != o.rows || cols != o.cols || nodata != o.nodata) return false;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (nodata[i] == 0 &&
        std::bit_cast<std::uint32_t>(values[i]) != std::bit_cast<std::uint32_t>(o.values[i])) {
      return false;
    }
  }
  return true;
}

namespace {

void put_u16(std::vector<std::uint8_t>& out, std::uint16_t v) {
  out.push_back(static_cast<std::uint8_t>(v));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
}

void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) out.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
}

std::uint32_t get_u32(const std::uint8_t* p) {
  return std::uint32_t{p[0]} | std::uint32_t{p[1]} << 8 | std::uint32_t{p[2]} << 16 |
         std::uint32_t{p[3]} << 24;
}

constexpr std::size_t kHeaderSize = 4 + 2 + 4 + 4;

}  // namespace

std::vector<std::uint8_t> encode_band(const BandGrid& grid) {
  std::vector<std::uint8_t> out;
  out.reserve(kHeaderSize + grid.size() * 4);
  out.insert(out.end(), std::begin(kBandMagic), std::end(kBandMagic));
  put_u16(out, kBandFormatVersion);
  put_u32(out, grid.rows);
  put_u32(out, grid.cols);
  const auto qnan = std::bit_cast<std::uint32_t>(std::numeric_limits<float>::quiet_NaN());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    put_u32(out, grid.nodata[i] ? qnan : std::bit_cast<std::uint32_t>(grid.values[i]));
  }
  return out;
}

BandGrid decode_band(std::span<const std::uint8_t> bytes, std::string label) {
  if (bytes.size() < kHeaderSize || std::memcmp(bytes.data(), kBandMagic, 4) != 0) {
    fail(ErrorCode::Decode, "not a band file (bad magic)");
  }
  const std::uint16_t version = static_cast<std::uint16_t>(bytes[4] | bytes[5] << 8);
  if (version != kBandFormatVersion) {
    fail(ErrorCode::Decode, "unsupported band format version " + std::to_string(version));
  }
  const std::uint32_t rows = get_u32(bytes.data() + 6);
  const std::uint32_t cols = get_u32(bytes.data() + 10);
  const std::size_t n = static_cast<std::size_t>(rows) * cols;
  if (bytes.size() != kHeaderSize + n * 4) {
    fail(ErrorCode::Decode, "band file length does not match " + std::to_string(rows) + "x" +
                                std::to_string(cols));
  }
  BandGrid grid(std::move(label), rows, cols);
  const std::uint8_t* p = bytes.data() + kHeaderSize;
  for (std::size_t i = 0; i < n; ++i, p += 4) {
    const float v = std::bit_cast<float>(get_u32(p));
    grid.values[i] = v;
    grid.nodata[i] = std::isnan(v) ? 1 : 0;
  }
  return grid;
}

}  // namespace rasterix

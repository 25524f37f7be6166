// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/band_math.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "rasterix/error.hpp"

namespace rasterix {

BandGrid compute_index(InfoKind kind, const BandGrid& nir, const BandGrid& red) {
  if (nir.rows != red.rows || nir.cols != red.cols) {
    fail(ErrorCode::InvalidArgument,
         "NIR is " + std::to_string(nir.rows) + "x" + std::to_string(nir.cols) + " but Red is " +
             std::to_string(red.rows) + "x" + std::to_string(red.cols));
  }
  BandGrid out(std::string(to_string(kind)), nir.rows, nir.cols);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double n = nir.values[i];
    const double r = red.values[i];
    bool valid = !nir.nodata[i] && !red.nodata[i] && n >= 0.0 && r >= 0.0;
    double v = 0.0;
    if (valid) {
      switch (kind) {
        case InfoKind::NDVI:
          valid = n + r != 0.0;
          if (valid) v = (n - r) / (n + r);
          break;
        case InfoKind::RVI:
          valid = r != 0.0;
          if (valid) v = n / r;
          break;
        case InfoKind::DVI:
          v = n - r;
          break;
      }
    }
    if (valid) {
      out.values[i] = static_cast<float>(v);
    } else {
      out.values[i] = std::numeric_limits<float>::quiet_NaN();
      out.nodata[i] = 1;
    }
  }
  return out;
}

PixelSize pixel_size_of(const BoundingBox& bbox, std::uint32_t rows, std::uint32_t cols) {
  return {bbox.width() / cols, bbox.height() / rows};
}

namespace {

constexpr double kSnap = 1e-6;  // fraction of a pixel

bool close(double a, double b) { return std::abs(a - b) <= 1e-9 * std::max(std::abs(a), std::abs(b)); }

std::int64_t lattice_index(double offset, double step) {
  const double k = offset / step;
  const double r = std::round(k);
  if (std::abs(k - r) > kSnap) {
    fail(ErrorCode::InvalidArgument, "tiles do not share a common pixel lattice");
  }
  return static_cast<std::int64_t>(r);
}

}  // namespace

Mosaic assemble_mosaic(std::span<const TileLayer> layers, const Query& q,
                       const MosaicOptions& options) {
  std::vector<const TileLayer*> order;
  for (const TileLayer& l : layers) {
    if (!intersects(l.meta.bbox, q.bbox)) {
      fail(ErrorCode::InvalidArgument, "tile " + l.meta.tile_id.str() + " lies outside the query");
    }
    if (l.grid.rows == 0 || l.grid.cols == 0) {
      fail(ErrorCode::InvalidArgument, "tile " + l.meta.tile_id.str() + " has an empty grid");
    }
    order.push_back(&l);
  }
  std::stable_sort(order.begin(), order.end(), [](const TileLayer* a, const TileLayer* b) {
    return catalog_order(a->meta, b->meta);
  });

  Mosaic m;
  double lon0 = q.bbox.min_lon();
  double lat0 = q.bbox.max_lat();
  if (!order.empty()) {
    const TileLayer& first = *order.front();
    m.pixel = pixel_size_of(first.meta.bbox, first.grid.rows, first.grid.cols);
    lon0 = first.meta.bbox.min_lon();
    lat0 = first.meta.bbox.max_lat();
    for (const TileLayer* l : order) {
      const PixelSize p = pixel_size_of(l->meta.bbox, l->grid.rows, l->grid.cols);
      if (!close(p.lon, m.pixel.lon) || !close(p.lat, m.pixel.lat)) {
        fail(ErrorCode::InvalidArgument, "tiles have mixed pixel sizes");
      }
    }
  } else if (options.fallback_pixel) {
    m.pixel = *options.fallback_pixel;
  } else {
    m.bbox = q.bbox;
    m.grid = BandGrid(std::string(to_string(q.info)), 0, 0);
    return m;
  }

  const double px = m.pixel.lon;
  const double py = m.pixel.lat;
  const auto i0 = static_cast<std::int64_t>(std::floor((q.bbox.min_lon() - lon0) / px + kSnap));
  auto i1 = static_cast<std::int64_t>(std::ceil((q.bbox.max_lon() - lon0) / px - kSnap));
  const auto j0 = static_cast<std::int64_t>(std::floor((lat0 - q.bbox.max_lat()) / py + kSnap));
  auto j1 = static_cast<std::int64_t>(std::ceil((lat0 - q.bbox.min_lat()) / py - kSnap));
  i1 = std::max(i1, i0 + 1);
  j1 = std::max(j1, j0 + 1);
  const auto cols = static_cast<std::size_t>(i1 - i0);
  const auto rows = static_cast<std::size_t>(j1 - j0);
  if (rows * cols > options.max_pixels) {
    fail(ErrorCode::InvalidArgument, "query covers " + std::to_string(rows) + "x" +
                                         std::to_string(cols) +
                                         " pixels, above the mosaic limit");
  }
  m.bbox = BoundingBox(std::clamp(lon0 + static_cast<double>(i0) * px, -180.0, 180.0),
                       std::clamp(lon0 + static_cast<double>(i1) * px, -180.0, 180.0),
                       std::clamp(lat0 - static_cast<double>(j1) * py, -90.0, 90.0),
                       std::clamp(lat0 - static_cast<double>(j0) * py, -90.0, 90.0));
  m.grid = BandGrid(std::string(to_string(q.info)), static_cast<std::uint32_t>(rows),
                    static_cast<std::uint32_t>(cols), std::numeric_limits<float>::quiet_NaN());
  std::fill(m.grid.nodata.begin(), m.grid.nodata.end(), std::uint8_t{1});

  for (const TileLayer* l : order) {
    m.provenance.push_back(l->meta.tile_id);
    const std::int64_t ti = lattice_index(l->meta.bbox.min_lon() - lon0, px) - i0;
    const std::int64_t tj = lattice_index(lat0 - l->meta.bbox.max_lat(), py) - j0;
    const BandGrid& g = l->grid;
    for (std::uint32_t r = 0; r < g.rows; ++r) {
      const std::int64_t mr = tj + r;
      if (mr < 0 || mr >= static_cast<std::int64_t>(rows)) continue;
      for (std::uint32_t c = 0; c < g.cols; ++c) {
        const std::int64_t mc = ti + c;
        if (mc < 0 || mc >= static_cast<std::int64_t>(cols) || g.is_nodata(r, c)) continue;
        m.grid.set(static_cast<std::uint32_t>(mr), static_cast<std::uint32_t>(mc), g.at(r, c));
      }
    }
  }
  return m;
}

}  // namespace rasterix

// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/heatmap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace rasterix {

DisplayRange display_range(InfoKind kind) {
  switch (kind) {
    case InfoKind::NDVI: return {-1.0, 1.0};
    case InfoKind::RVI: return {0.0, 10.0};
    case InfoKind::DVI: return {-1.0, 1.0};
  }
  return {-1.0, 1.0};
}

std::vector<std::uint8_t> render_heatmap(const Mosaic& mosaic, InfoKind kind) {
  const BandGrid& g = mosaic.grid;
  const std::string header =
      "P5\n" + std::to_string(g.cols) + " " + std::to_string(g.rows) + "\n255\n";
  std::vector<std::uint8_t> out(header.begin(), header.end());
  out.reserve(header.size() + g.size());
  const DisplayRange range = display_range(kind);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.nodata[i]) {
      out.push_back(0);
      continue;
    }
    const double t = (std::clamp<double>(g.values[i], range.lo, range.hi) - range.lo) /
                     (range.hi - range.lo);
    out.push_back(static_cast<std::uint8_t>(1 + std::lround(t * 254.0)));
  }
  return out;
}

}  // namespace rasterix

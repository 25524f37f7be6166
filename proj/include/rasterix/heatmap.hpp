// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "rasterix/band_math.hpp"

namespace rasterix {

struct DisplayRange {
  double lo;
  double hi;
};

/// NDVI and DVI: [-1, 1]. RVI: [0, 10].
DisplayRange display_range(InfoKind kind);

/// Binary PGM (P5, maxval 255). Data pixels map linearly from the kind's
/// display range onto 1..255 (clamped); no-data pixels are 0.
std::vector<std::uint8_t> render_heatmap(const Mosaic& mosaic, InfoKind kind);

}  // namespace rasterix

// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include "rasterix/geo.hpp"

namespace rasterix {

/// Vegetation index computed per pixel from the NIR and Red bands.
enum class InfoKind { NDVI, RVI, DVI };

std::string_view to_string(InfoKind kind);
/// Case-insensitive.
InfoKind parse_info_kind(std::string_view name);

/// A rectangular spatio-temporal request for one kind of information.
struct Query {
  BoundingBox bbox;
  TimeRange time;
  std::optional<std::string> satellite;  // empty optional = any source
  InfoKind info = InfoKind::NDVI;

  /// Rejects an engaged but empty satellite filter.
  void validate() const;
};

}  // namespace rasterix

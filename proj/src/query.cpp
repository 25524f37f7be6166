// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/query.hpp"

#include <algorithm>
#include <cctype>

#include "rasterix/error.hpp"

namespace rasterix {

std::string_view to_string(InfoKind kind) {
  switch (kind) {
    case InfoKind::NDVI: return "NDVI";
    case InfoKind::RVI: return "RVI";
    case InfoKind::DVI: return "DVI";
  }
  return "?";
}

InfoKind parse_info_kind(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  for (InfoKind k : {InfoKind::NDVI, InfoKind::RVI, InfoKind::DVI}) {
    if (to_string(k) == upper) return k;
  }
  fail(ErrorCode::InvalidArgument, "unknown information kind '" + std::string(name) + "'");
}

void Query::validate() const {
  if (satellite && satellite->empty()) {
    fail(ErrorCode::InvalidArgument, "satellite filter, when given, must be non-empty");
  }
}

}  // namespace rasterix

// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "rasterix/multi_index.hpp"
#include "rasterix/query.hpp"
#include "rasterix/tile_store.hpp"

namespace rasterix::bench {

struct Summary {
  double mean = 0.0;
  double stddev = 0.0;  // sample standard deviation
};

Summary summarize(std::span<const double> samples);

struct LinearFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;  // clamped to [0, 1]
};

/// Ordinary least squares of y on x.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

/// Method names used in reports.
inline constexpr const char* kMulti = "multi";
inline constexpr const char* kBruteForce = "brute_force";

struct ScalingReport {
  std::vector<std::size_t> counts;
  int repeat = 0;
  std::size_t tiles = 0;
  std::uint64_t seed = 0;
  /// method -> per-count elapsed milliseconds
  std::map<std::string, std::vector<Summary>> elapsed_ms;
  LinearFit multi_fit;  // multi-index elapsed (ms) vs query count
  std::map<std::string, std::uint64_t> winners;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct OverheadReport {
  int repeat = 0;
  std::size_t tiles = 0;
  unsigned workers = 3;
  std::map<std::string, std::size_t> size_bytes;
  std::map<std::string, Summary> build_ms;

  nlohmann::json to_json() const;
  std::string to_text() const;
};

struct ScalingConfig {
  std::vector<std::size_t> counts;
  int repeat = 50;
  std::uint64_t seed = 7;
};

/// Runs `count` queries back to back for each count and method: the racing
/// multi-index, each index alone behind the same worker dispatch, and a
/// linear scan of the catalog rows as the brute-force baseline.
ScalingReport bench_query_scaling(MultiIndex& index, std::span<const TileMetadata> catalog,
                                  const std::vector<Query>& workload, const ScalingConfig& config);

/// Builds each single index and the multi-index `repeat` times.
OverheadReport bench_overhead(const std::vector<IndexEntry>& entries, int repeat,
                              const IndexParams& params = {});

/// Catalog-shaped rows for metadata-only entries.
std::vector<TileMetadata> catalog_rows(std::span<const IndexEntry> entries,
                                       const IndexParams& params,
                                       std::string_view satellite = "LANDSAT_8");

/// Brute-force traversal: every row checked against the query.
TileIdSet brute_force_select(std::span<const TileMetadata> rows, const Query& q);

}  // namespace rasterix::bench

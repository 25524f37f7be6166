// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <memory>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "rasterix/band_math.hpp"
#include "rasterix/error.hpp"
#include "rasterix/multi_index.hpp"
#include "rasterix/tile_store.hpp"

namespace rasterix {

struct StageTimings {
  std::chrono::nanoseconds index{0};    // racing tile selection
  std::chrono::nanoseconds select{0};   // catalog lookup and filters
  std::chrono::nanoseconds fetch{0};
  std::chrono::nanoseconds compute{0};
  std::chrono::nanoseconds mosaic{0};
  std::chrono::nanoseconds total{0};
};

struct QueryResult {
  Mosaic mosaic;
  RaceOutcome race;
  StageTimings timings;
  std::size_t tile_count = 0;
};

/// Store + multi-index pair that answers end-to-end queries. Shared state is
/// read-only while queries run, so execute() may be called concurrently.
class QueryEngine {
 public:
  struct Options {
    std::chrono::milliseconds deadline{30'000};
    /// Cross-check the race's tile set against a full catalog selection.
    bool verify = false;
    /// Concurrent per-tile fetch + compute tasks.
    unsigned fan_out = std::max(1U, std::thread::hardware_concurrency());
    MosaicOptions mosaic;
  };

  QueryEngine(TileStore& store, MultiIndex& index, Options options);
  QueryEngine(TileStore& store, MultiIndex& index) : QueryEngine(store, index, Options{}) {}

  /// Builds the multi-index over everything the store's catalog holds.
  static std::unique_ptr<MultiIndex> index_store(const TileStore& store, bool verify = false);

  QueryResult execute(const Query& q) const;

  struct BatchItem {
    std::optional<QueryResult> result;
    std::optional<Error> error;
  };
  struct BatchResult {
    std::vector<BatchItem> items;
    std::chrono::nanoseconds elapsed{0};
  };

  /// Runs queries in order (or `parallelism` at a time); a failing query is
  /// recorded and the batch carries on.
  BatchResult execute_batch(const std::vector<Query>& queries, unsigned parallelism = 1) const;

  TileStore& store() const noexcept { return store_; }
  MultiIndex& index() const noexcept { return index_; }
  const Options& options() const noexcept { return options_; }

 private:
  TileStore& store_;
  MultiIndex& index_;
  Options options_;
};

}  // namespace rasterix

// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/query_engine.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <thread>

namespace rasterix {

namespace {

using Clock = std::chrono::steady_clock;

// Runs body(i) for i in [0, n) on up to `threads` threads and rethrows the
// first exception.
template <typename Body>
void parallel_for(std::size_t n, unsigned threads, Body body) {
  threads = static_cast<unsigned>(std::min<std::size_t>(std::max(1U, threads), n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mu;
  {
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < n; i = next++) {
          try {
            body(i);
          } catch (...) {
            std::lock_guard lock(error_mu);
            if (!error) error = std::current_exception();
          }
        }
      });
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

QueryEngine::QueryEngine(TileStore& store, MultiIndex& index, Options options)
    : store_(store), index_(index), options_(std::move(options)) {
  if (!options_.mosaic.fallback_pixel) {
    const auto rows = store_.catalog().rows();
    if (!rows.empty() && rows.front().meta.rows > 0 && rows.front().meta.cols > 0) {
      const TileMetadata& m = rows.front().meta;
      options_.mosaic.fallback_pixel = pixel_size_of(m.bbox, m.rows, m.cols);
    }
  }
}

std::unique_ptr<MultiIndex> QueryEngine::index_store(const TileStore& store, bool verify) {
  MultiIndex::Options opts;
  opts.params = store.config().params;
  opts.verify = verify;
  return MultiIndex::build_all(store.index_entries(), opts);
}

QueryResult QueryEngine::execute(const Query& q) const {
  q.validate();
  const auto t_start = Clock::now();
  QueryResult out;

  out.race = index_.race_query(q.bbox, q.time, options_.deadline);
  const auto t_index = Clock::now();

  std::vector<TileMetadata> tiles;
  tiles.reserve(out.race.result.size());
  for (const TileId& id : out.race.result) {
    auto record = store_.record(id);
    if (!record) fail(ErrorCode::Corruption, "index returned unknown tile " + id.str());
    if (q.satellite && record->meta.satellite != *q.satellite) continue;
    tiles.push_back(std::move(record->meta));
  }
  std::sort(tiles.begin(), tiles.end(), catalog_order);
  if (options_.verify) {
    const auto expected = store_.catalog_select(q);
    const bool same = std::equal(tiles.begin(), tiles.end(), expected.begin(), expected.end(),
                                 [](const TileMetadata& a, const TileMetadata& b) {
                                   return a.tile_id == b.tile_id;
                                 });
    if (!same) {
      fail(ErrorCode::Corruption, "racing index and catalog disagree on the tile set");
    }
  }
  const auto t_select = Clock::now();

  std::vector<TileLayer> layers(tiles.size());
  std::vector<std::chrono::nanoseconds> fetch_time(tiles.size());
  std::vector<std::chrono::nanoseconds> compute_time(tiles.size());
  parallel_for(tiles.size(), options_.fan_out, [&](std::size_t i) {
    const auto a = Clock::now();
    const BandGrid nir = store_.fetch_band(tiles[i].tile_id, kNirBand);
    const BandGrid red = store_.fetch_band(tiles[i].tile_id, kRedBand);
    const auto b = Clock::now();
    layers[i] = TileLayer{tiles[i], compute_index(q.info, nir, red)};
    compute_time[i] = Clock::now() - b;
    fetch_time[i] = b - a;
  });
  for (std::size_t i = 0; i < tiles.size(); ++i) {
    out.timings.fetch += fetch_time[i];
    out.timings.compute += compute_time[i];
  }

  const auto t_mosaic = Clock::now();
  out.mosaic = assemble_mosaic(layers, q, options_.mosaic);
  const auto t_end = Clock::now();

  out.tile_count = tiles.size();
  out.timings.index = t_index - t_start;
  out.timings.select = t_select - t_index;
  out.timings.mosaic = t_end - t_mosaic;
  out.timings.total = t_end - t_start;
  return out;
}

QueryEngine::BatchResult QueryEngine::execute_batch(const std::vector<Query>& queries,
                                                    unsigned parallelism) const {
  BatchResult out;
  out.items.resize(queries.size());
  const auto start = Clock::now();
  parallel_for(queries.size(), parallelism, [&](std::size_t i) {
    try {
      out.items[i].result = execute(queries[i]);
    } catch (const Error& e) {
      out.items[i].error = e;
    } catch (const std::exception& e) {
      out.items[i].error = Error(ErrorCode::Io, e.what());
    }
  });
  out.elapsed = Clock::now() - start;
  return out;
}

}  // namespace rasterix

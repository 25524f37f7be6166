// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/multi_index.hpp"

#include <algorithm>
#include <bit>
#include <condition_variable>
#include <exception>
#include <mutex>
#include <thread>

#include "rasterix/error.hpp"

namespace rasterix {

namespace {

using Clock = std::chrono::steady_clock;

std::size_t slot(IndexKind k) { return static_cast<std::size_t>(k); }

// Shared between the coordinator and the workers of one race.
struct RaceState {
  std::mutex mu;
  std::condition_variable cv;
  CancelToken cancel;
  Clock::time_point t0;
  bool verify = false;
  int finished = 0;
  std::array<std::optional<TileIdSet>, 3> results;
  std::array<std::optional<std::chrono::microseconds>, 3> latency;

  bool decided() {
    std::lock_guard lock(mu);
    return finished > 0 && !verify;
  }
};

}  // namespace

struct MultiIndex::Worker {
  IndexKind kind;
  int replica;
  std::unique_ptr<RangeIndex> index;
  std::atomic<bool> failed{false};
  std::atomic<std::int64_t> delay_ns{0};
  std::atomic<std::uint64_t> wins{0};
  std::atomic<std::uint64_t> completions{0};
  std::atomic<std::int64_t> latency_us{0};
  TaskWorker thread;

  void run(const std::shared_ptr<RaceState>& race, const BoundingBox& box,
           const TimeRange& time) {
    if (race->cancel.cancelled() || failed.load(std::memory_order_acquire)) return;
    if (const auto delay = std::chrono::nanoseconds(delay_ns.load()); delay.count() > 0) {
      std::unique_lock lock(race->mu);
      if (race->cv.wait_for(lock, delay, [&] { return race->cancel.cancelled(); })) return;
    }
    std::optional<TileIdSet> result;
    try {
      result = index->query(box, time, race->cancel);
    } catch (const std::exception&) {
      return;  // counts as a non-completing worker
    }
    if (!result) return;
    const auto elapsed =
        std::chrono::duration_cast<std::chrono::microseconds>(Clock::now() - race->t0);
    completions.fetch_add(1, std::memory_order_relaxed);
    latency_us.fetch_add(elapsed.count(), std::memory_order_relaxed);
    {
      std::lock_guard lock(race->mu);
      race->results[slot(kind)] = std::move(result);
      race->latency[slot(kind)] = elapsed;
      ++race->finished;
      if (!race->verify) race->cancel.cancel();
    }
    race->cv.notify_all();
  }
};

std::uint64_t snapshot_stamp(std::span<const IndexEntry> entries) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](std::uint64_t v) {
    for (int i = 0; i < 8; ++i) {
      h ^= (v >> (8 * i)) & 0xFF;
      h *= 0x100000001b3ULL;
    }
  };
  for (const IndexEntry& e : entries) {
    for (char c : e.id.str()) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    mix(std::bit_cast<std::uint64_t>(e.bbox.min_lon()));
    mix(std::bit_cast<std::uint64_t>(e.bbox.max_lon()));
    mix(std::bit_cast<std::uint64_t>(e.bbox.min_lat()));
    mix(std::bit_cast<std::uint64_t>(e.bbox.max_lat()));
    mix(static_cast<std::uint64_t>(e.time.start()));
    mix(static_cast<std::uint64_t>(e.time.end()));
  }
  return h;
}

std::unique_ptr<MultiIndex> MultiIndex::build_all(std::vector<IndexEntry> entries,
                                                  const Options& options) {
  {
    auto assigned = options.replica_of;
    std::sort(assigned.begin(), assigned.end());
    if (std::adjacent_find(assigned.begin(), assigned.end()) != assigned.end()) {
      fail(ErrorCode::InvalidArgument, "each index kind needs its own replica");
    }
  }
  std::unique_ptr<MultiIndex> m(new MultiIndex());
  m->options_ = options;
  m->verify_.store(options.verify);
  m->snapshot_ = snapshot_stamp(entries);

  std::array<std::vector<IndexEntry>, 3> copies{entries, entries, std::move(entries)};
  std::array<std::unique_ptr<RangeIndex>, 3> built;
  std::array<std::exception_ptr, 3> errors;

  const auto start = Clock::now();
  {
    std::array<std::jthread, 3> builders;
    for (IndexKind kind : kAllIndexKinds) {
      const std::size_t i = slot(kind);
      builders[i] = std::jthread([&, kind, i] {
        try {
          built[i] = index_build(kind, std::move(copies[i]), options.params);
        } catch (...) {
          errors[i] = std::current_exception();
        }
      });
    }
  }
  m->build_stats_.wall_time = Clock::now() - start;

  for (IndexKind kind : kAllIndexKinds) {
    if (!errors[slot(kind)]) continue;
    try {
      std::rethrow_exception(errors[slot(kind)]);
    } catch (const std::exception& e) {
      fail(ErrorCode::Build, std::string(to_string(kind)) + " index build failed: " + e.what());
    }
  }

  for (IndexKind kind : kAllIndexKinds) {
    auto& index = built[slot(kind)];
    m->build_stats_.build_time[kind] = index->build_time();
    m->build_stats_.size_bytes[kind] = index->serialize().size();
    auto worker = std::make_unique<Worker>();
    worker->kind = kind;
    worker->replica = options.replica_of[slot(kind)];
    worker->index = std::move(index);
    m->workers_[slot(kind)] = std::move(worker);
  }
  return m;
}

MultiIndex::~MultiIndex() = default;

RaceOutcome MultiIndex::race_query(const BoundingBox& box, const TimeRange& time,
                                   std::chrono::nanoseconds deadline, KindSet kinds) const {
  if (deadline.count() <= 0) fail(ErrorCode::InvalidArgument, "race deadline must be positive");
  if (kinds.empty()) fail(ErrorCode::InvalidArgument, "race needs at least one index kind");

  auto race = std::make_shared<RaceState>();
  race->verify = verify_.load();
  race->t0 = Clock::now();
  const auto give_up = race->t0 + deadline;

  // Dispatch in priority order; once a winner exists later launches are moot.
  int expected = 0;
  for (IndexKind kind : kRacePriority) {
    if (!kinds.contains(kind)) continue;
    if (race->decided()) break;
    Worker* w = workers_[slot(kind)].get();
    if (!w->failed.load()) ++expected;
    w->thread.post([w, race, box, time] { w->run(race, box, time); });
  }

  RaceOutcome out;
  {
    std::unique_lock lock(race->mu);
    const bool done = race->cv.wait_until(lock, give_up, [&] {
      return race->verify ? race->finished >= expected : race->finished > 0;
    });
    if (!done && race->finished == 0) {
      race->cancel.cancel();
      lock.unlock();
      race->cv.notify_all();
      fail(ErrorCode::Timeout, "no index worker answered before the deadline");
    }
    race->cancel.cancel();

    std::optional<IndexKind> winner;
    for (IndexKind kind : kRacePriority) {
      const auto& lat = race->latency[slot(kind)];
      if (!lat) continue;
      if (!winner || *lat < *race->latency[slot(*winner)]) winner = kind;
    }
    out.winner = *winner;
    for (IndexKind kind : kAllIndexKinds) {
      if (kinds.contains(kind)) out.latency_by_kind[kind] = race->latency[slot(kind)];
    }
    if (race->verify) {
      for (IndexKind kind : kAllIndexKinds) {
        const auto& r = race->results[slot(kind)];
        if (r && *r != *race->results[slot(*winner)]) {
          fail(ErrorCode::Corruption, std::string(to_string(kind)) + " disagrees with " +
                                          std::string(to_string(*winner)));
        }
      }
    }
    out.result = std::move(*race->results[slot(*winner)]);
  }
  race->cv.notify_all();
  workers_[slot(out.winner)]->wins.fetch_add(1, std::memory_order_relaxed);
  out.elapsed = Clock::now() - race->t0;
  return out;
}

void MultiIndex::fail_index_worker(IndexKind kind) { workers_[slot(kind)]->failed.store(true); }

void MultiIndex::restore_index_worker(IndexKind kind) {
  workers_[slot(kind)]->failed.store(false);
}

bool MultiIndex::worker_failed(IndexKind kind) const {
  return workers_[slot(kind)]->failed.load();
}

void MultiIndex::inject_delay(IndexKind kind, std::chrono::nanoseconds delay) {
  workers_[slot(kind)]->delay_ns.store(delay.count());
}

const RangeIndex& MultiIndex::index(IndexKind kind) const { return *workers_[slot(kind)]->index; }

int MultiIndex::replica_of(IndexKind kind) const { return workers_[slot(kind)]->replica; }

std::size_t MultiIndex::entry_count() const noexcept {
  return workers_[0]->index->entry_count();
}

RaceStats MultiIndex::race_stats() const {
  RaceStats s;
  for (IndexKind kind : kAllIndexKinds) {
    const Worker& w = *workers_[slot(kind)];
    s.wins[kind] = w.wins.load();
    s.completions[kind] = w.completions.load();
    s.total_latency[kind] = std::chrono::microseconds(w.latency_us.load());
  }
  return s;
}

std::vector<std::uint8_t> MultiIndex::serialize() const {
  detail::BlobWriter w;
  w.u64(snapshot_);
  for (IndexKind kind : kAllIndexKinds) {
    const Worker& worker = *workers_[slot(kind)];
    const auto blob = worker.index->serialize();
    w.u8(static_cast<std::uint8_t>(kind));
    w.u8(static_cast<std::uint8_t>(worker.replica));
    w.u64(blob.size());
    for (std::uint8_t b : blob) w.u8(b);
  }
  return w.finish("MXIX", 1);
}

}  // namespace rasterix

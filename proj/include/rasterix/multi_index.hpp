// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <atomic>
#include <chrono>
#include <map>
#include <memory>
#include <optional>

#include "rasterix/range_index.hpp"
#include "rasterix/task_worker.hpp"

namespace rasterix {

/// Bit set over IndexKind.
class KindSet {
 public:
  constexpr KindSet() = default;
  static constexpr KindSet all() { return KindSet(0b111); }
  static constexpr KindSet only(IndexKind k) { return KindSet(bit(k)); }

  constexpr bool contains(IndexKind k) const { return (bits_ & bit(k)) != 0; }
  constexpr KindSet with(IndexKind k) const { return KindSet(bits_ | bit(k)); }
  constexpr bool empty() const { return bits_ == 0; }

 private:
  constexpr explicit KindSet(unsigned bits) : bits_(bits) {}
  static constexpr unsigned bit(IndexKind k) { return 1U << static_cast<unsigned>(k); }
  unsigned bits_ = 0;
};

/// Tie-break order when finish times are equal: QuadTree, then OrthoList,
/// then GeoHash.
inline constexpr std::array<IndexKind, 3> kRacePriority = {
    IndexKind::QuadTree, IndexKind::OrthoList, IndexKind::GeoHash};

struct RaceOutcome {
  TileIdSet result;
  IndexKind winner = IndexKind::QuadTree;
  /// Microsecond latency from dispatch to completion per launched kind;
  /// nullopt marks a kind that was cancelled, failed or not launched.
  std::map<IndexKind, std::optional<std::chrono::microseconds>> latency_by_kind;
  /// Coordinator wall time including dispatch and hand-off.
  std::chrono::nanoseconds elapsed{0};
};

struct BuildStats {
  std::map<IndexKind, std::chrono::nanoseconds> build_time;
  std::map<IndexKind, std::size_t> size_bytes;
  std::chrono::nanoseconds wall_time{0};
};

struct RaceStats {
  std::map<IndexKind, std::uint64_t> wins;
  std::map<IndexKind, std::uint64_t> completions;
  std::map<IndexKind, std::chrono::microseconds> total_latency;
};

/// The three indexes built from one entry snapshot, each served by its own
/// worker bound to one replica node. Queries race the workers and take the
/// first completed answer.
class MultiIndex {
 public:
  struct Options {
    IndexParams params;
    /// Replica node serving each kind, indexed by IndexKind.
    std::array<int, 3> replica_of{0, 1, 2};
    std::chrono::milliseconds default_deadline{30'000};
    /// Run every launched kind to completion and require identical answers.
    bool verify = false;
  };

  static std::unique_ptr<MultiIndex> build_all(std::vector<IndexEntry> entries,
                                               const Options& options);
  static std::unique_ptr<MultiIndex> build_all(std::vector<IndexEntry> entries) {
    return build_all(std::move(entries), Options{});
  }

  ~MultiIndex();
  MultiIndex(const MultiIndex&) = delete;
  MultiIndex& operator=(const MultiIndex&) = delete;

  RaceOutcome race_query(const BoundingBox& box, const TimeRange& time) const {
    return race_query(box, time, options_.default_deadline);
  }
  /// Throws a timeout error when no launched kind completes before the
  /// deadline.
  RaceOutcome race_query(const BoundingBox& box, const TimeRange& time,
                         std::chrono::nanoseconds deadline,
                         KindSet kinds = KindSet::all()) const;

  void fail_index_worker(IndexKind kind);
  void restore_index_worker(IndexKind kind);
  bool worker_failed(IndexKind kind) const;

  /// Artificial per-query stall before a worker starts its traversal. The
  /// stall ends early when the race is decided.
  void inject_delay(IndexKind kind, std::chrono::nanoseconds delay);

  void set_verify(bool on) { verify_.store(on); }
  bool verify() const { return verify_.load(); }

  const RangeIndex& index(IndexKind kind) const;
  int replica_of(IndexKind kind) const;
  std::uint64_t snapshot_version() const noexcept { return snapshot_; }
  const BuildStats& build_stats() const noexcept { return build_stats_; }
  std::size_t entry_count() const noexcept;
  RaceStats race_stats() const;

  /// "MXIX" header, snapshot stamp, then each kind's blob with its replica id.
  std::vector<std::uint8_t> serialize() const;

 private:
  struct Worker;

  MultiIndex() = default;

  Options options_;
  std::uint64_t snapshot_ = 0;
  BuildStats build_stats_;
  std::atomic<bool> verify_{false};
  std::array<std::unique_ptr<Worker>, 3> workers_;
};

/// FNV-1a stamp over the ordered entry list.
std::uint64_t snapshot_stamp(std::span<const IndexEntry> entries);

}  // namespace rasterix

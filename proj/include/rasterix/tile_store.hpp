// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

#include "rasterix/band_grid.hpp"
#include "rasterix/geo.hpp"
#include "rasterix/ortho_grid_index.hpp"
#include "rasterix/query.hpp"
#include "rasterix/range_index.hpp"

namespace rasterix {

inline constexpr int kReplicationFactor = 3;

/// A multi-band capture before ingest. Every band shares rows x cols.
struct RasterScene {
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;
  std::vector<BandGrid> bands;
  BoundingBox bbox = BoundingBox::world();
  std::int64_t capture_time = 0;
  std::string satellite;

  void validate() const;
};

/// Scene directory: scene.json plus one <label>.band file per band.
void write_scene(const std::filesystem::path& dir, const RasterScene& scene);
RasterScene read_scene(const std::filesystem::path& dir);

/// The three index keys kept with a tile's metadata. Each is a pure function
/// of the bbox.
struct IndexKeys {
  std::string geohash;        // code of the bbox centre at the index precision
  std::string quadtree_path;  // e.g. "NE.NW.SE"
  GridCell grid;              // global grid cell of the bbox centre

  friend bool operator==(const IndexKeys&, const IndexKeys&) = default;
};

IndexKeys compute_index_keys(const BoundingBox& bbox, const IndexParams& params);

struct TileMetadata {
  TileId tile_id;
  BoundingBox bbox = BoundingBox::world();
  std::int64_t capture_time = 0;
  std::string satellite;
  std::vector<std::string> band_labels;
  IndexKeys index_keys;
  std::uint32_t rows = 0;
  std::uint32_t cols = 0;

  IndexEntry index_entry() const { return {tile_id, bbox, TimeRange::instant(capture_time)}; }
};

/// One catalog row: metadata plus where and how its bands were stored.
struct CatalogRecord {
  TileMetadata meta;
  std::vector<int> replicas;                      // placement order
  std::map<std::string, std::string> checksums;   // band label -> sha256 hex
  std::map<std::string, std::vector<std::uint64_t>> nodata;  // band -> flat pixel offsets
};

std::string to_json_line(const CatalogRecord& record);
CatalogRecord record_from_json(std::string_view text);

/// Directory layout inside a node:
/// lon_<floor(min_lon)>/lat_<floor(min_lat)>/<YYYY>/<tile_id>, with floors
/// printed as sign plus a three-digit magnitude.
std::string tile_dir(const TileMetadata& meta);
std::string tile_path(const TileMetadata& meta, std::string_view band_label);

/// Catalog selection order: capture time, then tile id.
bool catalog_order(const TileMetadata& a, const TileMetadata& b);

/// Relational-shaped metadata table, one row per tile.
class MetadataCatalog {
 public:
  virtual ~MetadataCatalog() = default;

  virtual void insert(const CatalogRecord& record) = 0;
  virtual std::optional<CatalogRecord> get(const TileId& id) const = 0;
  virtual bool contains(const TileId& id) const = 0;
  virtual std::size_t size() const = 0;
  /// Rows in insertion order.
  virtual std::vector<CatalogRecord> rows() const = 0;
  /// Linear scan honouring bbox, time and satellite filter, in catalog order.
  virtual std::vector<TileMetadata> select(const Query& q) const = 0;
};

/// Newline-delimited JSON file, kept fully in memory for reads.
class NdjsonCatalog final : public MetadataCatalog {
 public:
  explicit NdjsonCatalog(std::filesystem::path file);

  void insert(const CatalogRecord& record) override;
  std::optional<CatalogRecord> get(const TileId& id) const override;
  bool contains(const TileId& id) const override;
  std::size_t size() const override;
  std::vector<CatalogRecord> rows() const override;
  std::vector<TileMetadata> select(const Query& q) const override;

  const std::filesystem::path& file() const noexcept { return file_; }

 private:
  std::filesystem::path file_;
  mutable std::shared_mutex mu_;
  std::vector<CatalogRecord> rows_;
  std::unordered_map<TileId, std::size_t> by_id_;
};

/// Simulated replicated store: N node directories under one root, each with
/// an availability flag. Every tile lands on three distinct live nodes.
class TileStore {
 public:
  struct Config {
    int nodes = 3;
    IndexParams params;
  };

  /// Initialises an empty store at `root` (which must not hold one already).
  static std::unique_ptr<TileStore> create(const std::filesystem::path& root,
                                           const Config& config);
  /// Opens an existing store, re-validating every catalog row's index keys.
  static std::unique_ptr<TileStore> open(const std::filesystem::path& root);
  static bool exists(const std::filesystem::path& root);

  TileId ingest(const RasterScene& scene);

  std::vector<TileMetadata> catalog_select(const Query& q) const { return catalog_->select(q); }
  std::optional<CatalogRecord> record(const TileId& id) const { return catalog_->get(id); }
  const MetadataCatalog& catalog() const noexcept { return *catalog_; }
  std::vector<IndexEntry> index_entries() const;

  /// Reads a band from the first live replica in placement order and checks
  /// it against the catalog checksum.
  BandGrid fetch_band(const TileId& id, std::string_view band_label) const;

  void fail_node(int node);
  void restore_node(int node);
  bool node_alive(int node) const;
  int node_count() const noexcept { return node_count_; }

  const std::filesystem::path& root() const noexcept { return root_; }
  std::filesystem::path node_dir(int node) const;
  const Config& config() const noexcept { return config_; }

 private:
  TileStore(std::filesystem::path root, Config config);

  void check_node(int node) const;
  void save_node_state() const;
  void write_replica(int node, const CatalogRecord& record,
                     const std::vector<std::vector<std::uint8_t>>& band_bytes) const;

  std::filesystem::path root_;
  Config config_;
  std::unique_ptr<NdjsonCatalog> catalog_;
  std::unique_ptr<std::atomic<bool>[]> alive_flags_;
  int node_count_ = 0;

  mutable std::mutex ingest_mu_;
  std::set<TileId> pending_;
  std::uint64_t placements_ = 0;
  mutable std::mutex node_file_mu_;
};

}  // namespace rasterix

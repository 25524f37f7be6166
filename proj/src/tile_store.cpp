// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/tile_store.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iterator>
#include <sstream>
#include <unordered_set>

#include <json.hpp>

#include "rasterix/checksum.hpp"
#include "rasterix/error.hpp"
#include "rasterix/geohash.hpp"
#include "rasterix/quadtree_index.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace rasterix {

namespace {

std::optional<std::vector<std::uint8_t>> read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  return std::vector<std::uint8_t>(std::istreambuf_iterator<char>(in),
                                   std::istreambuf_iterator<char>());
}

void write_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) fail(ErrorCode::Io, "cannot write " + path.string());
}

void write_text(const fs::path& path, const std::string& text) {
  write_file(path, std::span<const std::uint8_t>(
                       reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::Corruption, path.string() + ": " + e.what());
  }
}

std::string signed_degree(double v) {
  const auto d = static_cast<long long>(std::floor(v));
  char buf[32];
  if (d < 0) {
    std::snprintf(buf, sizeof(buf), "-%03lld", -d);
  } else {
    std::snprintf(buf, sizeof(buf), "%03lld", d);
  }
  return buf;
}

int utc_year(std::int64_t epoch_seconds) {
  using namespace std::chrono;
  const auto days = floor<std::chrono::days>(sys_seconds{seconds{epoch_seconds}});
  return static_cast<int>(year_month_day{days}.year());
}

json to_json(const CatalogRecord& r) {
  const TileMetadata& m = r.meta;
  json j;
  j["tile_id"] = m.tile_id.str();
  j["min_lon"] = m.bbox.min_lon();
  j["max_lon"] = m.bbox.max_lon();
  j["min_lat"] = m.bbox.min_lat();
  j["max_lat"] = m.bbox.max_lat();
  j["capture_time"] = m.capture_time;
  j["satellite"] = m.satellite;
  j["bands"] = m.band_labels;
  j["geohash"] = m.index_keys.geohash;
  j["quadtree_path"] = m.index_keys.quadtree_path;
  j["grid_row"] = m.index_keys.grid.row;
  j["grid_col"] = m.index_keys.grid.col;
  j["checksums"] = r.checksums;
  j["replicas"] = r.replicas;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  j["nodata"] = r.nodata;
  return j;
}

CatalogRecord from_json(const json& j) {
  CatalogRecord r;
  TileMetadata& m = r.meta;
  m.tile_id = TileId(j.at("tile_id").get<std::string>());
  m.bbox = BoundingBox(j.at("min_lon").get<double>(), j.at("max_lon").get<double>(),
                       j.at("min_lat").get<double>(), j.at("max_lat").get<double>());
  m.capture_time = j.at("capture_time").get<std::int64_t>();
  m.satellite = j.at("satellite").get<std::string>();
  m.band_labels = j.at("bands").get<std::vector<std::string>>();
  m.index_keys.geohash = j.at("geohash").get<std::string>();
  m.index_keys.quadtree_path = j.at("quadtree_path").get<std::string>();
  m.index_keys.grid = {j.at("grid_row").get<std::int64_t>(), j.at("grid_col").get<std::int64_t>()};
  m.rows = j.value("rows", 0U);
  m.cols = j.value("cols", 0U);
  r.checksums = j.at("checksums").get<std::map<std::string, std::string>>();
  r.replicas = j.value("replicas", std::vector<int>{});
  r.nodata = j.value("nodata", std::map<std::string, std::vector<std::uint64_t>>{});
  return r;
}

bool matches(const TileMetadata& m, const Query& q) {
  return intersects(m.bbox, q.bbox) && overlaps_time(TimeRange::instant(m.capture_time), q.time) &&
         (!q.satellite || *q.satellite == m.satellite);
}

}  // namespace

// ---------------------------------------------------------------------------
// Scenes

void RasterScene::validate() const {
  if (rows == 0 || cols == 0) fail(ErrorCode::InvalidArgument, "scene has zero rows or cols");
  if (bands.empty()) fail(ErrorCode::InvalidArgument, "scene has no bands");
  if (satellite.empty()) fail(ErrorCode::InvalidArgument, "scene has no satellite name");
  std::set<std::string> labels;
  for (const BandGrid& b : bands) {
    if (b.label.empty() || b.label.find('/') != std::string::npos) {
      fail(ErrorCode::InvalidArgument, "bad band label '" + b.label + "'");
    }
    if (!labels.insert(b.label).second) {
      fail(ErrorCode::InvalidArgument, "duplicate band label " + b.label);
    }
    if (b.rows != rows || b.cols != cols || b.values.size() != b.nodata.size() ||
        b.values.size() != static_cast<std::size_t>(rows) * cols) {
      fail(ErrorCode::InvalidArgument, "band " + b.label + " does not match scene dimensions");
    }
    for (std::size_t i = 0; i < b.values.size(); ++i) {
      if (!b.nodata[i] && !std::isfinite(b.values[i])) {
        fail(ErrorCode::InvalidArgument, "band " + b.label + " has a non-finite data pixel");
      }
    }
  }
}

void write_scene(const fs::path& dir, const RasterScene& scene) {
  scene.validate();
  json j;
  j["rows"] = scene.rows;
  j["cols"] = scene.cols;
  j["min_lon"] = scene.bbox.min_lon();
  j["max_lon"] = scene.bbox.max_lon();
  j["min_lat"] = scene.bbox.min_lat();
  j["max_lat"] = scene.bbox.max_lat();
  j["capture_time"] = scene.capture_time;
  j["satellite"] = scene.satellite;
  json labels = json::array();
  for (const BandGrid& b : scene.bands) {
    labels.push_back(b.label);
    write_file(dir / (b.label + ".band"), encode_band(b));
  }
  j["bands"] = labels;
  write_text(dir / "scene.json", j.dump(2) + "\n");
}

RasterScene read_scene(const fs::path& dir) {
  const json j = read_json_file(dir / "scene.json");
  RasterScene s;
  try {
    s.rows = j.at("rows").get<std::uint32_t>();
    s.cols = j.at("cols").get<std::uint32_t>();
    s.bbox = BoundingBox(j.at("min_lon").get<double>(), j.at("max_lon").get<double>(),
                         j.at("min_lat").get<double>(), j.at("max_lat").get<double>());
    s.capture_time = j.at("capture_time").get<std::int64_t>();
    s.satellite = j.at("satellite").get<std::string>();
    for (const auto& label : j.at("bands")) {
      const auto name = label.get<std::string>();
      const auto bytes = read_file(dir / (name + ".band"));
      if (!bytes) fail(ErrorCode::Io, "missing band file for " + name + " in " + dir.string());
      s.bands.push_back(decode_band(*bytes, name));
    }
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, (dir / "scene.json").string() + ": " + e.what());
  }
  s.validate();
  return s;
}

// ---------------------------------------------------------------------------
// Metadata

IndexKeys compute_index_keys(const BoundingBox& bbox, const IndexParams& params) {
  const GeoPoint c = bbox.center();
  return {geohash::encode(c, params.geohash_precision),
          QuadTreeIndex::path_for(bbox, params.quadtree_max_depth),
          OrthoGridIndex::cell_for(c, params.grid_cell_deg)};
}

std::string to_json_line(const CatalogRecord& record) { return to_json(record).dump(); }

CatalogRecord record_from_json(std::string_view text) {
  try {
    return from_json(json::parse(text));
  } catch (const json::exception& e) {
    fail(ErrorCode::Corruption, std::string("bad catalog row: ") + e.what());
  }
}

std::string tile_dir(const TileMetadata& meta) {
  char year[16];
  std::snprintf(year, sizeof(year), "%04d", utc_year(meta.capture_time));
  return "lon_" + signed_degree(meta.bbox.min_lon()) + "/lat_" +
         signed_degree(meta.bbox.min_lat()) + "/" + year + "/" + meta.tile_id.str();
}

std::string tile_path(const TileMetadata& meta, std::string_view band_label) {
  return tile_dir(meta) + "/" + std::string(band_label) + ".band";
}

bool catalog_order(const TileMetadata& a, const TileMetadata& b) {
  if (a.capture_time != b.capture_time) return a.capture_time < b.capture_time;
  return a.tile_id < b.tile_id;
}

// ---------------------------------------------------------------------------
// Catalog

NdjsonCatalog::NdjsonCatalog(fs::path file) : file_(std::move(file)) {
  std::ifstream in(file_);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    CatalogRecord r;
    try {
      r = from_json(json::parse(line));
    } catch (const std::exception& e) {
      fail(ErrorCode::Corruption,
           file_.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
    by_id_.emplace(r.meta.tile_id, rows_.size());
    rows_.push_back(std::move(r));
  }
}

void NdjsonCatalog::insert(const CatalogRecord& record) {
  std::unique_lock lock(mu_);
  if (by_id_.contains(record.meta.tile_id)) {
    fail(ErrorCode::Ingest, "catalog already holds tile " + record.meta.tile_id.str());
  }
  std::ofstream out(file_, std::ios::app);
  out << to_json_line(record) << '\n';
  out.flush();
  if (!out) fail(ErrorCode::Io, "cannot append to " + file_.string());
  by_id_.emplace(record.meta.tile_id, rows_.size());
  rows_.push_back(record);
}

std::optional<CatalogRecord> NdjsonCatalog::get(const TileId& id) const {
  std::shared_lock lock(mu_);
  const auto it = by_id_.find(id);
  if (it == by_id_.end()) return std::nullopt;
  return rows_[it->second];
}

bool NdjsonCatalog::contains(const TileId& id) const {
  std::shared_lock lock(mu_);
  return by_id_.contains(id);
}

std::size_t NdjsonCatalog::size() const {
  std::shared_lock lock(mu_);
  return rows_.size();
}

std::vector<CatalogRecord> NdjsonCatalog::rows() const {
  std::shared_lock lock(mu_);
  return rows_;
}

std::vector<TileMetadata> NdjsonCatalog::select(const Query& q) const {
  std::vector<TileMetadata> out;
  {
    std::shared_lock lock(mu_);
    for (const CatalogRecord& r : rows_) {
      if (matches(r.meta, q)) out.push_back(r.meta);
    }
  }
  std::sort(out.begin(), out.end(), catalog_order);
  return out;
}

// ---------------------------------------------------------------------------
// Store

TileStore::TileStore(fs::path root, Config config)
    : root_(std::move(root)), config_(config), node_count_(config.nodes) {
  alive_flags_ = std::make_unique<std::atomic<bool>[]>(static_cast<std::size_t>(node_count_));
  for (int i = 0; i < node_count_; ++i) alive_flags_[static_cast<std::size_t>(i)].store(true);
}

bool TileStore::exists(const fs::path& root) { return fs::exists(root / "store.json"); }

std::unique_ptr<TileStore> TileStore::create(const fs::path& root, const Config& config) {
  if (config.nodes < kReplicationFactor) {
    fail(ErrorCode::InvalidArgument, "a store needs at least 3 nodes, got " +
                                         std::to_string(config.nodes));
  }
  if (exists(root)) fail(ErrorCode::InvalidArgument, "store already exists at " + root.string());
  fs::create_directories(root);
  json j;
  j["version"] = 1;
  j["nodes"] = config.nodes;
  j["geohash_precision"] = config.params.geohash_precision;
  j["quadtree_leaf_capacity"] = config.params.quadtree_leaf_capacity;
  j["quadtree_max_depth"] = config.params.quadtree_max_depth;
  j["grid_cell_deg"] = config.params.grid_cell_deg;
  write_text(root / "store.json", j.dump(2) + "\n");
  std::unique_ptr<TileStore> store(new TileStore(root, config));
  for (int i = 0; i < config.nodes; ++i) fs::create_directories(store->node_dir(i));
  store->save_node_state();
  store->catalog_ = std::make_unique<NdjsonCatalog>(root / "catalog.ndjson");
  return store;
}

std::unique_ptr<TileStore> TileStore::open(const fs::path& root) {
  if (!exists(root)) fail(ErrorCode::Unavailable, "no store at " + root.string());
  const json j = read_json_file(root / "store.json");
  Config config;
  config.nodes = j.at("nodes").get<int>();
  config.params.geohash_precision = j.at("geohash_precision").get<int>();
  config.params.quadtree_leaf_capacity = j.at("quadtree_leaf_capacity").get<int>();
  config.params.quadtree_max_depth = j.at("quadtree_max_depth").get<int>();
  config.params.grid_cell_deg = j.at("grid_cell_deg").get<double>();
  std::unique_ptr<TileStore> store(new TileStore(root, config));
  if (fs::exists(root / "nodes.json")) {
    const json nodes = read_json_file(root / "nodes.json");
    const auto alive = nodes.at("alive").get<std::vector<bool>>();
    for (std::size_t i = 0; i < alive.size() && i < static_cast<std::size_t>(config.nodes); ++i) {
      store->alive_flags_[i].store(alive[i]);
    }
  }
  store->catalog_ = std::make_unique<NdjsonCatalog>(root / "catalog.ndjson");
  for (const CatalogRecord& r : store->catalog_->rows()) {
    if (compute_index_keys(r.meta.bbox, config.params) != r.meta.index_keys) {
      fail(ErrorCode::Corruption, "index keys of tile " + r.meta.tile_id.str() +
                                      " do not match its bbox");
    }
  }
  store->placements_ = store->catalog_->size();
  return store;
}

fs::path TileStore::node_dir(int node) const { return root_ / ("node_" + std::to_string(node)); }

void TileStore::check_node(int node) const {
  if (node < 0 || node >= node_count_) {
    fail(ErrorCode::NotFound, "unknown node id " + std::to_string(node));
  }
}

bool TileStore::node_alive(int node) const {
  check_node(node);
  return alive_flags_[static_cast<std::size_t>(node)].load(std::memory_order_acquire);
}

void TileStore::fail_node(int node) {
  check_node(node);
  alive_flags_[static_cast<std::size_t>(node)].store(false, std::memory_order_release);
  save_node_state();
}

void TileStore::restore_node(int node) {
  check_node(node);
  alive_flags_[static_cast<std::size_t>(node)].store(true, std::memory_order_release);
  save_node_state();
}

void TileStore::save_node_state() const {
  std::lock_guard lock(node_file_mu_);
  json alive = json::array();
  for (int i = 0; i < node_count_; ++i) alive.push_back(node_alive(i));
  json j;
  j["alive"] = alive;
  write_text(root_ / "nodes.json", j.dump() + "\n");
}

std::vector<IndexEntry> TileStore::index_entries() const {
  std::vector<IndexEntry> entries;
  for (const CatalogRecord& r : catalog_->rows()) entries.push_back(r.meta.index_entry());
  return entries;
}

void TileStore::write_replica(int node, const CatalogRecord& record,
                              const std::vector<std::vector<std::uint8_t>>& band_bytes) const {
  if (!node_alive(node)) {
    fail(ErrorCode::Replication, "node " + std::to_string(node) + " went down during ingest");
  }
  const fs::path dir = node_dir(node) / tile_dir(record.meta);
  for (std::size_t i = 0; i < band_bytes.size(); ++i) {
    write_file(dir / (record.meta.band_labels[i] + ".band"), band_bytes[i]);
  }
  write_text(dir / "meta.json", to_json(record).dump(2) + "\n");
}

TileId TileStore::ingest(const RasterScene& scene) {
  scene.validate();
  CatalogRecord record;
  TileMetadata& meta = record.meta;
  meta.tile_id = TileId::derive(scene.bbox, scene.capture_time, scene.satellite);
  meta.bbox = scene.bbox;
  meta.capture_time = scene.capture_time;
  meta.satellite = scene.satellite;
  meta.rows = scene.rows;
  meta.cols = scene.cols;
  meta.index_keys = compute_index_keys(scene.bbox, config_.params);

  std::vector<std::vector<std::uint8_t>> band_bytes;
  for (const BandGrid& b : scene.bands) {
    meta.band_labels.push_back(b.label);
    band_bytes.push_back(encode_band(b));
    record.checksums[b.label] = sha256_hex(band_bytes.back());
    std::vector<std::uint64_t> holes;
    for (std::size_t i = 0; i < b.nodata.size(); ++i) {
      if (b.nodata[i]) holes.push_back(i);
    }
    if (!holes.empty()) record.nodata[b.label] = std::move(holes);
  }

  {
    std::lock_guard lock(ingest_mu_);
    if (catalog_->contains(meta.tile_id) || pending_.contains(meta.tile_id)) {
      fail(ErrorCode::Ingest, "scene already ingested as tile " + meta.tile_id.str());
    }
    std::vector<int> live;
    for (int i = 0; i < node_count_; ++i) {
      if (node_alive(i)) live.push_back(i);
    }
    if (live.size() < static_cast<std::size_t>(kReplicationFactor)) {
      fail(ErrorCode::Replication, "only " + std::to_string(live.size()) +
                                       " live nodes, need " + std::to_string(kReplicationFactor));
    }
    const std::size_t start = placements_++ % live.size();
    for (int k = 0; k < kReplicationFactor; ++k) {
      record.replicas.push_back(live[(start + static_cast<std::size_t>(k)) % live.size()]);
    }
    pending_.insert(meta.tile_id);
  }

  try {
    for (int node : record.replicas) write_replica(node, record, band_bytes);
    catalog_->insert(record);
  } catch (...) {
    std::lock_guard lock(ingest_mu_);
    pending_.erase(meta.tile_id);
    throw;
  }
  std::lock_guard lock(ingest_mu_);
  pending_.erase(meta.tile_id);
  return meta.tile_id;
}

BandGrid TileStore::fetch_band(const TileId& id, std::string_view band_label) const {
  const auto record = catalog_->get(id);
  if (!record) fail(ErrorCode::NotFound, "unknown tile " + id.str());
  const auto sum = record->checksums.find(std::string(band_label));
  if (sum == record->checksums.end()) {
    fail(ErrorCode::InvalidArgument,
         "tile " + id.str() + " has no band '" + std::string(band_label) + "'");
  }
  const std::string rel = tile_path(record->meta, band_label);
  for (int node : record->replicas) {
    if (!node_alive(node)) continue;
    const auto bytes = read_file(node_dir(node) / rel);
    if (!bytes || sha256_hex(*bytes) != sum->second) {
      fail(ErrorCode::Corruption, "replica of " + rel + " on node " + std::to_string(node) +
                                      (bytes ? " fails its checksum" : " is missing"));
    }
    return decode_band(*bytes, std::string(band_label));
  }
  fail(ErrorCode::Unavailable, "all replicas of tile " + id.str() + " are down");
}

}  // namespace rasterix

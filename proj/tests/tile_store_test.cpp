// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>
#include <random>

#include "oracles.hpp"
#include "rasterix/checksum.hpp"
#include "rasterix/error.hpp"
#include "rasterix/synth.hpp"
#include "rasterix/tile_store.hpp"

using namespace rasterix;
namespace fs = std::filesystem;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::Io;
}

std::size_t count_files(const fs::path& dir, const std::string& ext) {
  std::size_t n = 0;
  for (const auto& e : fs::recursive_directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ext) ++n;
  }
  return n;
}

std::vector<std::uint8_t> slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("ingest writes ten bands to three replicas") {
  oracle::TempDir dir;
  auto store = TileStore::create(dir / "store", {});
  const auto layout = synth::TileLayout::for_count(1);
  const RasterScene scene = synth::make_scene(layout, 0, {64, 10, 3, "LANDSAT_8"});
  const TileId id = store->ingest(scene);

  CHECK(store->catalog().size() == 1);
  CHECK(count_files(dir / "store", ".band") == 30);
  const auto rec = store->record(id);
  REQUIRE(rec);
  CHECK(rec->replicas.size() == 3);
  CHECK(std::set<int>(rec->replicas.begin(), rec->replicas.end()).size() == 3);
  CHECK(rec->meta.band_labels.size() == 10);
  CHECK(rec->meta.index_keys == compute_index_keys(scene.bbox, store->config().params));

  // Every replica holds identical, checksummed bytes.
  for (const auto& label : rec->meta.band_labels) {
    for (int node : rec->replicas) {
      const auto bytes = slurp(store->node_dir(node) / tile_path(rec->meta, label));
      CHECK(sha256_hex(bytes) == rec->checksums.at(label));
    }
  }
  for (int node : rec->replicas) {
    CHECK(fs::exists(store->node_dir(node) / tile_dir(rec->meta) / "meta.json"));
  }

  for (const BandGrid& b : scene.bands) CHECK(store->fetch_band(id, b.label).same_pixels(b));

  CHECK(code_of([&] { store->ingest(scene); }) == ErrorCode::Ingest);
  CHECK(store->catalog().size() == 1);
}

TEST_CASE("tile paths follow the degree tree") {
  TileMetadata m;
  m.tile_id = TileId("abc123");
  m.bbox = BoundingBox(116.0, 116.0625, 39.0, 39.0625);
  m.capture_time = synth::kEpoch2020 + 100 * synth::kDay;
  CHECK(tile_path(m, "NIR") == "lon_116/lat_039/2020/abc123/NIR.band");

  m.bbox = BoundingBox(-3.5, -3.0, -1.2, -1.0);
  CHECK(tile_path(m, "Red") == "lon_-004/lat_-002/2020/abc123/Red.band");

  m.bbox = BoundingBox(5, 6, 0, 1);
  m.capture_time = 0;
  CHECK(tile_dir(m) == "lon_005/lat_000/1970/abc123");

  TileMetadata n = m;
  n.tile_id = TileId("def456");
  n.bbox = BoundingBox(5.5, 5.9, 0.2, 0.9);
  CHECK(tile_dir(n).substr(0, 21) == tile_dir(m).substr(0, 21));
}

TEST_CASE("catalog rows survive a JSON round trip") {
  CatalogRecord r;
  r.meta.tile_id = TileId("00ff");
  r.meta.bbox = BoundingBox(116.0, 116.0625, 39.0, 39.0625);
  r.meta.capture_time = 1600000000;
  r.meta.satellite = "LANDSAT_8";
  r.meta.band_labels = {"Red", "NIR"};
  r.meta.index_keys = compute_index_keys(r.meta.bbox, {});
  r.meta.rows = 4;
  r.meta.cols = 5;
  r.replicas = {2, 0, 1};
  r.checksums = {{"Red", "aa"}, {"NIR", "bb"}};
  r.nodata = {{"Red", {1, 7}}};
  const std::string line = to_json_line(r);
  const CatalogRecord back = record_from_json(line);
  CHECK(to_json_line(back) == line);
  CHECK(back.meta.bbox == r.meta.bbox);
  CHECK(back.meta.index_keys == r.meta.index_keys);
  CHECK(back.replicas == r.replicas);
  CHECK(back.nodata == r.nodata);
  for (const char* key : {"tile_id", "min_lon", "max_lon", "min_lat", "max_lat", "capture_time",
                          "satellite", "bands", "geohash", "quadtree_path", "grid_row", "grid_col",
                          "checksums"}) {
    CHECK(line.find(std::string("\"") + key + "\"") != std::string::npos);
  }
  CHECK(code_of([] { record_from_json("{not json"); }) == ErrorCode::Corruption);
}

TEST_CASE("catalog selection equals a linear scan") {
  oracle::TempDir dir;
  auto store = TileStore::create(dir / "store", {5, {}});
  const auto layout = synth::TileLayout::for_count(40);
  std::vector<TileMetadata> metas;
  for (std::size_t i = 0; i < 40; ++i) {
    synth::SceneSpec spec{4, 5, 71, i % 3 == 0 ? "SENTINEL_2" : "LANDSAT_8"};
    store->ingest(synth::make_scene(layout, i, spec));
  }
  for (const auto& r : store->catalog().rows()) metas.push_back(r.meta);

  const auto queries =
      synth::make_queries(layout.extent(40), layout.tile_deg, 500, 72, InfoKind::NDVI);
  std::size_t nonempty = 0;
  for (std::size_t i = 0; i < queries.size(); ++i) {
    Query q = queries[i];
    if (i % 2) q.satellite = "SENTINEL_2";
    std::vector<TileMetadata> expected;
    for (const auto& m : metas) {
      if (oracle::boxes_touch(m.bbox, q.bbox) &&
          oracle::times_touch(TimeRange::instant(m.capture_time), q.time) &&
          (!q.satellite || *q.satellite == m.satellite)) {
        expected.push_back(m);
      }
    }
    std::sort(expected.begin(), expected.end(), [](const auto& a, const auto& b) {
      return std::pair(a.capture_time, a.tile_id) < std::pair(b.capture_time, b.tile_id);
    });
    const auto got = store->catalog_select(q);
    REQUIRE(got.size() == expected.size());
    for (std::size_t k = 0; k < got.size(); ++k) CHECK(got[k].tile_id == expected[k].tile_id);
    nonempty += !got.empty();
  }
  CHECK(nonempty > 50);
}

TEST_CASE("placement is round robin over live nodes") {
  oracle::TempDir dir;
  auto store = TileStore::create(dir / "store", {4, {}});
  const auto layout = synth::TileLayout::for_count(8);
  std::vector<std::vector<int>> placements;
  for (std::size_t i = 0; i < 4; ++i) {
    const TileId id = store->ingest(synth::make_scene(layout, i, {2, 5, 1, "LANDSAT_8"}));
    placements.push_back(store->record(id)->replicas);
  }
  CHECK(placements[0] == std::vector<int>{0, 1, 2});
  CHECK(placements[1] == std::vector<int>{1, 2, 3});
  CHECK(placements[2] == std::vector<int>{2, 3, 0});
  CHECK(placements[3] == std::vector<int>{3, 0, 1});
  store->fail_node(1);
  const TileId id = store->ingest(synth::make_scene(layout, 4, {2, 5, 1, "LANDSAT_8"}));
  for (int n : store->record(id)->replicas) CHECK(n != 1);
}

TEST_CASE("reads fail over across replicas") {
  oracle::TempDir dir;
  auto store = TileStore::create(dir / "store", {});
  const RasterScene scene = oracle::scene(BoundingBox(116, 116.0625, 39, 39.0625), 1600000000, 16, 5);
  const TileId id = store->ingest(scene);
  const auto healthy = encode_band(store->fetch_band(id, "NIR"));

  for (int down = 0; down < 3; ++down) {
    store->fail_node(down);
    CHECK_FALSE(store->node_alive(down));
    CHECK(encode_band(store->fetch_band(id, "NIR")) == healthy);
    store->restore_node(down);
  }
  store->fail_node(0);
  store->fail_node(1);
  CHECK(encode_band(store->fetch_band(id, "NIR")) == healthy);
  store->fail_node(2);
  CHECK(code_of([&] { store->fetch_band(id, "NIR"); }) == ErrorCode::Unavailable);
  for (int n = 0; n < 3; ++n) store->restore_node(n);
  CHECK(encode_band(store->fetch_band(id, "NIR")) == healthy);

  CHECK(code_of([&] { store->fetch_band(id, "SWIR1"); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { store->fetch_band(TileId("nope"), "NIR"); }) == ErrorCode::NotFound);
  CHECK(code_of([&] { store->fail_node(3); }) == ErrorCode::NotFound);
  CHECK(code_of([&] { store->fail_node(-1); }) == ErrorCode::NotFound);
}

TEST_CASE("corrupt replicas are reported with their node") {
  oracle::TempDir dir;
  auto store = TileStore::create(dir / "store", {});
  const TileId id =
      store->ingest(oracle::scene(BoundingBox(116, 116.0625, 39, 39.0625), 1600000000, 8, 6));
  const auto rec = *store->record(id);
  const fs::path file = store->node_dir(rec.replicas[0]) / tile_path(rec.meta, "Red");
  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(20);
    f.put('\x7f');
  }
  try {
    store->fetch_band(id, "Red");
    FAIL("corruption not detected");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Corruption);
    CHECK(std::string(e.what()).find("node " + std::to_string(rec.replicas[0])) !=
          std::string::npos);
  }
  // With the bad node down the next replica serves the read.
  store->fail_node(rec.replicas[0]);
  CHECK(store->fetch_band(id, "Red").rows == 8);
}

TEST_CASE("ingest needs three live nodes") {
  oracle::TempDir dir;
  auto store = TileStore::create(dir / "store", {});
  store->fail_node(2);
  CHECK(code_of([&] {
          store->ingest(oracle::scene(BoundingBox(0, 1, 0, 1), 0, 2, 1));
        }) == ErrorCode::Replication);
  CHECK(store->catalog().size() == 0);
  CHECK(code_of([&] { TileStore::create(dir / "small", {2, {}}); }) ==
        ErrorCode::InvalidArgument);
}

TEST_CASE("store state persists across reopen") {
  oracle::TempDir dir;
  TileId id;
  {
    auto store = TileStore::create(dir / "store", {4, {}});
    id = store->ingest(oracle::scene(BoundingBox(116, 116.0625, 39, 39.0625), 1600000000, 8, 7));
    store->fail_node(3);
  }
  CHECK(TileStore::exists(dir / "store"));
  CHECK(code_of([&] { TileStore::create(dir / "store", {}); }) == ErrorCode::InvalidArgument);
  auto store = TileStore::open(dir / "store");
  CHECK(store->node_count() == 4);
  CHECK_FALSE(store->node_alive(3));
  CHECK(store->catalog().size() == 1);
  CHECK(store->fetch_band(id, "NIR").cols == 8);
  CHECK(code_of([&] { TileStore::open(dir / "missing"); }) == ErrorCode::Unavailable);
}

TEST_CASE("tampered index keys are caught on open") {
  oracle::TempDir dir;
  {
    auto store = TileStore::create(dir / "store", {});
    store->ingest(oracle::scene(BoundingBox(116, 116.0625, 39, 39.0625), 1600000000, 4, 8));
  }
  const fs::path cat = dir / "store" / "catalog.ndjson";
  std::ifstream in(cat);
  std::string line;
  std::getline(in, line);
  in.close();
  CatalogRecord r = record_from_json(line);
  r.meta.index_keys.geohash = "00000";
  std::ofstream(cat) << to_json_line(r) << '\n';
  CHECK(code_of([&] { TileStore::open(dir / "store"); }) == ErrorCode::Corruption);
}

TEST_CASE("scene directories round trip") {
  oracle::TempDir dir;
  const auto layout = synth::TileLayout::for_count(1);
  RasterScene s = synth::make_scene(layout, 0, {16, 6, 9, "LANDSAT_8"});
  s.bands[0].set_nodata(3, 4);
  write_scene(dir / "scene", s);
  const RasterScene back = read_scene(dir / "scene");
  CHECK(back.bbox == s.bbox);
  CHECK(back.capture_time == s.capture_time);
  REQUIRE(back.bands.size() == s.bands.size());
  for (std::size_t i = 0; i < s.bands.size(); ++i) {
    CHECK(back.bands[i].label == s.bands[i].label);
    CHECK(back.bands[i].same_pixels(s.bands[i]));
  }
}

TEST_CASE("scene validation") {
  RasterScene s = oracle::scene(BoundingBox(0, 1, 0, 1), 0, 2, 1);
  CHECK_NOTHROW(s.validate());
  auto broken = s;
  broken.bands[1].values[0] = std::numeric_limits<float>::infinity();
  CHECK(code_of([&] { broken.validate(); }) == ErrorCode::InvalidArgument);
  broken = s;
  broken.bands[1].label = "Green";
  CHECK(code_of([&] { broken.validate(); }) == ErrorCode::InvalidArgument);
  broken = s;
  broken.bands[2] = BandGrid("NIR", 3, 2);
  CHECK(code_of([&] { broken.validate(); }) == ErrorCode::InvalidArgument);
  broken = s;
  broken.satellite.clear();
  CHECK(code_of([&] { broken.validate(); }) == ErrorCode::InvalidArgument);
}

// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

// Command-line front end: synthetic data, ingest, queries, fault injection,
// the HTTP service and the benchmarks.

#include <csignal>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "rasterix/bench.hpp"
#include "rasterix/heatmap.hpp"
#include "rasterix/query_engine.hpp"
#include "rasterix/service.hpp"
#include "rasterix/synth.hpp"

namespace fs = std::filesystem;
using namespace rasterix;

namespace {

enum ExitCode { kOk = 0, kValidation = 2, kStore = 3, kTimeout = 4 };

int exit_code(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::Decode:
    case ErrorCode::NotFound:
      return kValidation;
    case ErrorCode::Timeout:
      return kTimeout;
    default:
      return kStore;
  }
}

std::vector<std::size_t> parse_counts(const std::string& spec, std::size_t step) {
  std::vector<std::size_t> counts;
  try {
    if (const auto dots = spec.find(".."); dots != std::string::npos) {
      const std::size_t lo = std::stoul(spec.substr(0, dots));
      const std::size_t hi = std::stoul(spec.substr(dots + 2));
      if (step == 0) step = lo;
      if (lo == 0 || step == 0 || hi < lo) throw std::invalid_argument(spec);
      for (std::size_t c = lo; c <= hi; c += step) counts.push_back(c);
    } else {
      std::stringstream ss(spec);
      std::string item;
      while (std::getline(ss, item, ',')) counts.push_back(std::stoul(item));
    }
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "cannot parse counts '" + spec + "'");
  }
  if (counts.empty()) fail(ErrorCode::InvalidArgument, "no counts in '" + spec + "'");
  return counts;
}

void write_json(const std::string& path, const nlohmann::json& j) {
  if (path.empty()) return;
  std::ofstream out(path);
  out << j.dump(2) << '\n';
  if (!out) fail(ErrorCode::Io, "cannot write " + path);
}

std::vector<fs::path> scene_dirs(const fs::path& dir) {
  if (fs::exists(dir / "scene.json")) return {dir};
  std::vector<fs::path> dirs;
  if (fs::is_directory(dir)) {
    for (const auto& e : fs::directory_iterator(dir)) {
      if (e.is_directory() && fs::exists(e.path() / "scene.json")) dirs.push_back(e.path());
    }
  }
  if (dirs.empty()) fail(ErrorCode::InvalidArgument, "no scenes under " + dir.string());
  std::sort(dirs.begin(), dirs.end());
  return dirs;
}

Service* g_service = nullptr;

void on_signal(int) {
  if (g_service) g_service->stop();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"rasterix: replicated multi-index raster store"};
  app.require_subcommand(1);

  // gen-scenes
  auto* gen = app.add_subcommand("gen-scenes", "Write synthetic multi-band scenes");
  std::size_t gen_count = 4;
  synth::SceneSpec spec;
  std::string gen_out = "scenes";
  gen->add_option("--count", gen_count, "Number of scenes")->check(CLI::PositiveNumber);
  gen->add_option("--size", spec.size, "Pixels per side")->check(CLI::PositiveNumber);
  gen->add_option("--bands", spec.bands, "Bands per scene (5-10)")->check(CLI::Range(5, 10));
  gen->add_option("--seed", spec.seed, "Random seed");
  gen->add_option("--satellite", spec.satellite, "Satellite name");
  gen->add_option("--out", gen_out, "Output directory");

  // ingest
  auto* ingest = app.add_subcommand("ingest", "Ingest scene directories into a store");
  std::string scene_dir;
  std::string store_root = "store";
  int nodes = 3;
  ingest->add_option("scene-dir", scene_dir, "Scene directory or a directory of scenes")
      ->required();
  ingest->add_option("--store", store_root, "Store root");
  ingest->add_option("--nodes", nodes, "Storage nodes when creating the store");

  // query
  auto* query = app.add_subcommand("query", "Run one query and write a heatmap");
  double min_lon = 0, max_lon = 0, min_lat = 0, max_lat = 0;
  std::int64_t start = 0, end = 0;
  std::string satellite, info = "ndvi", out_path;
  bool verify = false;
  query->add_option("--store", store_root, "Store root");
  query->add_option("--min-lon", min_lon)->required();
  query->add_option("--max-lon", max_lon)->required();
  query->add_option("--min-lat", min_lat)->required();
  query->add_option("--max-lat", max_lat)->required();
  query->add_option("--start", start, "Start, UTC epoch seconds")->required();
  query->add_option("--end", end, "End, UTC epoch seconds")->required();
  query->add_option("--satellite", satellite, "Only tiles from this satellite");
  query->add_option("--info", info, "ndvi, rvi or dvi");
  query->add_option("--out", out_path, "PGM heatmap output path");
  query->add_flag("--verify", verify, "Cross-check every index and the catalog");

  // serve
  auto* serve = app.add_subcommand("serve", "Serve the HTTP query API");
  int port = 8080;
  std::string host = "127.0.0.1";
  serve->add_option("--store", store_root, "Store root");
  serve->add_option("--port", port, "TCP port");
  serve->add_option("--host", host, "Bind address");

  // node fail|restore
  auto* node = app.add_subcommand("node", "Mark a storage node failed or restored");
  std::string node_action;
  int node_id = -1;
  node->add_option("action", node_action, "fail or restore")
      ->required()
      ->check(CLI::IsMember({"fail", "restore"}));
  node->add_option("id", node_id, "Node id")->required();
  node->add_option("--store", store_root, "Store root");

  // bench
  auto* bench = app.add_subcommand("bench", "Benchmarks");
  bench->require_subcommand(1);
  auto* scaling = bench->add_subcommand("scaling", "Elapsed time vs number of queries");
  auto* overhead = bench->add_subcommand("overhead", "Index size and build time");
  std::string counts_spec = "100..1000";
  std::size_t step = 0;
  int repeat = 50;
  std::size_t tiles = 9000;
  std::uint64_t seed = 7;
  std::string json_path, bench_store;
  for (auto* sub : {scaling, overhead}) {
    sub->add_option("--repeat", repeat, "Repetitions per measurement")->check(CLI::PositiveNumber);
    sub->add_option("--tiles", tiles, "Synthetic tile records when no store is given");
    sub->add_option("--seed", seed, "Workload seed");
    sub->add_option("--json", json_path, "Write the JSON report here");
    sub->add_option("--store", bench_store, "Benchmark over this store's catalog");
  }
  scaling->add_option("--counts", counts_spec, "a..b (with --step) or a comma list");
  scaling->add_option("--step", step, "Step for a..b ranges (default: a)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto layout = synth::TileLayout::for_count(gen_count);
      for (std::size_t i = 0; i < gen_count; ++i) {
        char name[32];
        std::snprintf(name, sizeof(name), "scene_%05zu", i);
        write_scene(fs::path(gen_out) / name, synth::make_scene(layout, i, spec));
      }
      std::cout << "wrote " << gen_count << " scenes to " << gen_out << '\n';
      return kOk;
    }

    if (*ingest) {
      auto store = TileStore::exists(store_root)
                       ? TileStore::open(store_root)
                       : TileStore::create(store_root, TileStore::Config{nodes, {}});
      std::size_t n = 0;
      for (const auto& dir : scene_dirs(scene_dir)) {
        const TileId id = store->ingest(read_scene(dir));
        std::cout << id << "  " << dir.string() << '\n';
        ++n;
      }
      std::cout << "ingested " << n << " scenes; catalog holds " << store->catalog().size()
                << " tiles\n";
      return kOk;
    }

    if (*node) {
      auto store = TileStore::open(store_root);
      if (node_action == "fail") {
        store->fail_node(node_id);
      } else {
        store->restore_node(node_id);
      }
      std::cout << "node " << node_id << (node_action == "fail" ? " failed" : " restored") << '\n';
      return kOk;
    }

    if (*query) {
      Query q{BoundingBox(min_lon, max_lon, min_lat, max_lat), TimeRange(start, end),
              satellite.empty() ? std::nullopt : std::optional<std::string>(satellite),
              parse_info_kind(info)};
      auto store = TileStore::open(store_root);
      auto index = QueryEngine::index_store(*store, verify);
      QueryEngine::Options opts;
      opts.verify = verify;
      QueryEngine engine(*store, *index, opts);
      const QueryResult r = engine.execute(q);
      if (!out_path.empty()) {
        const auto pgm = render_heatmap(r.mosaic, q.info);
        std::ofstream out(out_path, std::ios::binary);
        out.write(reinterpret_cast<const char*>(pgm.data()), static_cast<std::streamsize>(pgm.size()));
        if (!out) fail(ErrorCode::Io, "cannot write " + out_path);
      }
      nlohmann::json j;
      j["tile_count"] = r.tile_count;
      j["winner"] = to_string(r.race.winner);
      j["mosaic"] = {{"rows", r.mosaic.rows()}, {"cols", r.mosaic.cols()}};
      j["total_ms"] = std::chrono::duration<double, std::milli>(r.timings.total).count();
      std::cout << j.dump() << '\n';
      return kOk;
    }

    if (*serve) {
      auto store = TileStore::open(store_root);
      auto index = QueryEngine::index_store(*store);
      QueryEngine engine(*store, *index);
      Service service(engine);
      const int bound = service.bind(host, port);
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      std::cout << "serving " << store->catalog().size() << " tiles on http://" << host << ":"
                << bound << std::endl;
      service.run();
      g_service = nullptr;
      return kOk;
    }

    if (*scaling || *overhead) {
      std::vector<IndexEntry> entries;
      std::vector<TileMetadata> rows;
      IndexParams params;
      double tile_deg = synth::TileLayout{}.tile_deg;
      if (!bench_store.empty()) {
        auto store = TileStore::open(bench_store);
        params = store->config().params;
        for (const auto& r : store->catalog().rows()) rows.push_back(r.meta);
        entries = store->index_entries();
        if (!rows.empty()) tile_deg = rows.front().bbox.width();
      } else {
        entries = synth::make_entries(synth::TileLayout::for_count(tiles), tiles, seed);
        rows = bench::catalog_rows(entries, params);
      }

      if (*overhead) {
        const auto report = bench::bench_overhead(entries, repeat, params);
        std::cout << report.to_text();
        write_json(json_path, report.to_json());
        return kOk;
      }

      const auto counts = parse_counts(counts_spec, step);
      BoundingBox extent = entries.empty() ? BoundingBox(0, 0, 0, 0) : entries.front().bbox;
      for (const auto& e : entries) {
        extent = BoundingBox(std::min(extent.min_lon(), e.bbox.min_lon()),
                             std::max(extent.max_lon(), e.bbox.max_lon()),
                             std::min(extent.min_lat(), e.bbox.min_lat()),
                             std::max(extent.max_lat(), e.bbox.max_lat()));
      }
      const auto workload = synth::make_queries(extent, tile_deg, counts.back(), seed);
      MultiIndex::Options mopts;
      mopts.params = params;
      auto index = MultiIndex::build_all(entries, mopts);
      const auto report =
          bench::bench_query_scaling(*index, rows, workload, {counts, repeat, seed});
      std::cout << report.to_text();
      write_json(json_path, report.to_json());
      return kOk;
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kStore;
  }
  return kOk;
}

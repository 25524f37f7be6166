// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>
#include <httplib.h>

#include "oracles.hpp"
#include "rasterix/service.hpp"
#include "rasterix/synth.hpp"

using namespace rasterix;
using nlohmann::json;

namespace {

constexpr double kD = 1.0 / 16;
constexpr std::int64_t kT = synth::kEpoch2020 + 40 * synth::kDay;

struct Fixture {
  oracle::TempDir dir;
  std::unique_ptr<TileStore> store;
  std::unique_ptr<MultiIndex> index;
  std::unique_ptr<QueryEngine> engine;

  Fixture() {
    store = TileStore::create(dir / "store", {});
    for (int r = 0; r < 2; ++r) {
      for (int c = 0; c < 2; ++c) {
        store->ingest(oracle::scene(
            BoundingBox(116 + c * kD, 116 + (c + 1) * kD, 39 + r * kD, 39 + (r + 1) * kD), kT, 8,
            static_cast<std::uint64_t>(10 + 2 * r + c)));
      }
    }
    index = QueryEngine::index_store(*store);
    engine = std::make_unique<QueryEngine>(*store, *index);
  }
};

json block_request() {
  return {{"min_lon", 116.0},      {"max_lon", 116.0 + 2 * kD}, {"min_lat", 39.0},
          {"max_lat", 39 + 2 * kD}, {"start_time", kT},         {"end_time", kT},
          {"info", "ndvi"}};
}

}  // namespace

TEST_CASE("status mapping") {
  CHECK(http_status(ErrorCode::InvalidArgument) == 400);
  CHECK(http_status(ErrorCode::Decode) == 400);
  CHECK(http_status(ErrorCode::NotFound) == 404);
  CHECK(http_status(ErrorCode::Unavailable) == 503);
  CHECK(http_status(ErrorCode::Timeout) == 504);
}

TEST_CASE("request parsing") {
  const Query q = parse_query_json(block_request());
  CHECK(q.bbox == BoundingBox(116, 116 + 2 * kD, 39, 39 + 2 * kD));
  CHECK(q.info == InfoKind::NDVI);
  CHECK_FALSE(q.satellite);
  json with_sat = block_request();
  with_sat["satellite"] = "LANDSAT_8";
  with_sat["info"] = "RVI";
  CHECK(parse_query_json(with_sat).satellite == "LANDSAT_8");
  CHECK(parse_query_json(with_sat).info == InfoKind::RVI);
  json missing = block_request();
  missing.erase("end_time");
  CHECK_THROWS_AS(parse_query_json(missing), Error);
  json wrong = block_request();
  wrong["min_lon"] = "west";
  CHECK_THROWS_AS(parse_query_json(wrong), Error);
}

TEST_CASE("handlers") {
  Fixture fx;
  Service svc(*fx.engine);

  auto h = svc.health();
  CHECK(h.status == 200);
  CHECK(h.body["status"] == "ok");
  CHECK(h.body["nodes"].size() == 3);

  auto r = svc.query(block_request().dump());
  CHECK(r.status == 200);
  CHECK(r.body["tile_count"] == 4);
  CHECK(r.body["mosaic"]["rows"] == 16);
  CHECK(r.body["image_format"] == "pgm");
  CHECK_FALSE(r.body["image_b64"].get<std::string>().empty());

  json bad = block_request();
  bad["min_lon"] = 117.0;
  r = svc.query(bad.dump());
  CHECK(r.status == 400);
  CHECK(r.body["error"].get<std::string>().find("min_lon") != std::string::npos);
  CHECK(svc.query("not json").status == 400);
  bad = block_request();
  bad["info"] = "evi";
  CHECK(svc.query(bad.dump()).status == 400);

  CHECK(svc.set_node(R"({"node_id": 7})", false).status == 404);
  CHECK(svc.set_node(R"({"node_id": 1})", false).status == 200);
  CHECK(svc.health().body["status"] == "degraded");
  CHECK(svc.query(block_request().dump()).body["tile_count"] == 4);
  CHECK(svc.set_node(R"({"node_id": 1})", true).status == 200);

  for (int n = 0; n < 3; ++n) svc.set_node(json{{"node_id", n}}.dump(), false);
  CHECK(svc.query(block_request().dump()).status == 503);
  for (int n = 0; n < 3; ++n) svc.set_node(json{{"node_id", n}}.dump(), true);

  CHECK(svc.set_index_worker(R"({"kind": "rtree"})", false).status == 404);
  CHECK(svc.set_index_worker(R"({"kind": "quadtree"})", false).status == 200);
  r = svc.query(block_request().dump());
  CHECK(r.body["winner"] != "quadtree");
  CHECK(svc.set_index_worker(R"({"kind": "quadtree"})", true).status == 200);
}

TEST_CASE("timeouts surface as 504") {
  Fixture fx;
  QueryEngine::Options opts;
  opts.deadline = std::chrono::milliseconds(30);
  QueryEngine engine(*fx.store, *fx.index, opts);
  Service svc(engine);
  for (const char* k : {"geohash", "quadtree", "ortholist"}) {
    svc.set_index_worker(json{{"kind", k}}.dump(), false);
  }
  CHECK(svc.query(block_request().dump()).status == 504);
}

TEST_CASE("HTTP round trip") {
  Fixture fx;
  Service svc(*fx.engine);
  const int port = svc.bind("127.0.0.1", 0);
  REQUIRE(port > 0);
  svc.start();
  httplib::Client client("127.0.0.1", port);

  auto health = client.Get("/v1/health");
  REQUIRE(health);
  CHECK(health->status == 200);
  CHECK(json::parse(health->body)["nodes"][0]["alive"] == true);

  auto res = client.Post("/v1/query", block_request().dump(), "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK(json::parse(res->body)["tile_count"] == 4);

  res = client.Post("/v1/admin/fail_node", R"({"node_id": 9})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 404);
  res = client.Post("/v1/admin/fail_node", R"({"node_id": 0})", "application/json");
  REQUIRE(res);
  CHECK(res->status == 200);
  CHECK_FALSE(fx.store->node_alive(0));
  res = client.Post("/v1/admin/restore_node", R"({"node_id": 0})", "application/json");
  REQUIRE(res);
  CHECK(fx.store->node_alive(0));
  svc.stop();
}

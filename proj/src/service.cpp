// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/service.hpp"

#include <httplib.h>

#include "rasterix/checksum.hpp"
#include "rasterix/heatmap.hpp"

using nlohmann::json;

namespace rasterix {

int http_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::Decode:
      return 400;
    case ErrorCode::NotFound:
      return 404;
    case ErrorCode::Timeout:
      return 504;
    case ErrorCode::Ingest:
      return 409;
    case ErrorCode::Replication:
    case ErrorCode::Unavailable:
    case ErrorCode::Corruption:
    case ErrorCode::Build:
    case ErrorCode::Io:
      return 503;
  }
  return 500;
}

namespace {

double ms(std::chrono::nanoseconds d) { return std::chrono::duration<double, std::milli>(d).count(); }

json error_body(const std::string& message) { return {{"error", message}}; }

json parse_body(const std::string& body) {
  try {
    return json::parse(body);
  } catch (const json::exception& e) {
    fail(ErrorCode::InvalidArgument, std::string("request body is not JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& body, const char* key) {
  if (!body.is_object() || !body.contains(key)) {
    fail(ErrorCode::InvalidArgument, std::string("missing field '") + key + "'");
  }
  try {
    return body.at(key).get<T>();
  } catch (const json::exception&) {
    fail(ErrorCode::InvalidArgument, std::string("field '") + key + "' has the wrong type");
  }
}

template <typename F>
Service::Response guarded(F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    return {http_status(e.code()), error_body(e.what())};
  } catch (const std::exception& e) {
    return {500, error_body(e.what())};
  }
}

}  // namespace

Query parse_query_json(const json& body) {
  Query q{BoundingBox(field<double>(body, "min_lon"), field<double>(body, "max_lon"),
                      field<double>(body, "min_lat"), field<double>(body, "max_lat")),
          TimeRange(field<std::int64_t>(body, "start_time"), field<std::int64_t>(body, "end_time")),
          std::nullopt, parse_info_kind(field<std::string>(body, "info"))};
  if (body.contains("satellite") && !body.at("satellite").is_null()) {
    q.satellite = field<std::string>(body, "satellite");
  }
  q.validate();
  return q;
}

struct Service::Impl {
  httplib::Server server;
};

Service::Service(QueryEngine& engine) : engine_(engine), impl_(std::make_unique<Impl>()) {
  auto reply = [](httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body.dump(), "application/json");
  };
  impl_->server.Get("/v1/health", [this, reply](const httplib::Request&, httplib::Response& res) {
    reply(res, health());
  });
  impl_->server.Post("/v1/query", [this, reply](const httplib::Request& req, httplib::Response& res) {
    reply(res, query(req.body));
  });
  impl_->server.Post("/v1/admin/fail_node",
                     [this, reply](const httplib::Request& req, httplib::Response& res) {
                       reply(res, set_node(req.body, false));
                     });
  impl_->server.Post("/v1/admin/restore_node",
                     [this, reply](const httplib::Request& req, httplib::Response& res) {
                       reply(res, set_node(req.body, true));
                     });
  impl_->server.Post("/v1/admin/fail_index",
                     [this, reply](const httplib::Request& req, httplib::Response& res) {
                       reply(res, set_index_worker(req.body, false));
                     });
  impl_->server.Post("/v1/admin/restore_index",
                     [this, reply](const httplib::Request& req, httplib::Response& res) {
                       reply(res, set_index_worker(req.body, true));
                     });
}

Service::~Service() { stop(); }

int Service::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) fail(ErrorCode::Io, "cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void Service::start() {
  thread_ = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
}

void Service::run() { impl_->server.listen_after_bind(); }

void Service::stop() {
  impl_->server.stop();
  if (thread_.joinable()) thread_.join();
}

Service::Response Service::health() const {
  const TileStore& store = engine_.store();
  const MultiIndex& index = engine_.index();
  json nodes = json::array();
  int alive = 0;
  for (int i = 0; i < store.node_count(); ++i) {
    nodes.push_back({{"id", i}, {"alive", store.node_alive(i)}});
    alive += store.node_alive(i);
  }
  json workers = json::array();
  int serving = 0;
  for (IndexKind kind : kAllIndexKinds) {
    const bool failed = index.worker_failed(kind);
    workers.push_back({{"kind", to_string(kind)}, {"replica", index.replica_of(kind)},
                       {"failed", failed}});
    serving += !failed;
  }
  const bool healthy = alive == store.node_count() && serving == 3;
  return {200,
          {{"status", healthy ? "ok" : "degraded"},
           {"nodes", nodes},
           {"index_workers", workers},
           {"tiles", store.catalog().size()}}};
}

Service::Response Service::query(const std::string& body) const {
  return guarded([&]() -> Response {
    const Query q = parse_query_json(parse_body(body));
    const QueryResult r = engine_.execute(q);
    const auto pgm = render_heatmap(r.mosaic, q.info);
    json tiles = json::array();
    for (const TileId& id : r.mosaic.provenance) tiles.push_back(id.str());
    return {200,
            {{"tile_count", r.tile_count},
             {"winner", to_string(r.race.winner)},
             {"timings",
              {{"index_ms", ms(r.timings.index)},
               {"select_ms", ms(r.timings.select)},
               {"fetch_ms", ms(r.timings.fetch)},
               {"compute_ms", ms(r.timings.compute)},
               {"mosaic_ms", ms(r.timings.mosaic)},
               {"total_ms", ms(r.timings.total)}}},
             {"mosaic",
              {{"rows", r.mosaic.rows()},
               {"cols", r.mosaic.cols()},
               {"min_lon", r.mosaic.bbox.min_lon()},
               {"max_lon", r.mosaic.bbox.max_lon()},
               {"min_lat", r.mosaic.bbox.min_lat()},
               {"max_lat", r.mosaic.bbox.max_lat()}}},
             {"tiles", tiles},
             {"image_format", "pgm"},
             {"image_b64", base64_encode(pgm)}}};
  });
}

Service::Response Service::set_node(const std::string& body, bool alive) const {
  return guarded([&]() -> Response {
    const int node = field<int>(parse_body(body), "node_id");
    if (node < 0 || node >= engine_.store().node_count()) {
      return {404, error_body("unknown node " + std::to_string(node))};
    }
    if (alive) {
      engine_.store().restore_node(node);
    } else {
      engine_.store().fail_node(node);
    }
    return {200, {{"node_id", node}, {"alive", alive}}};
  });
}

Service::Response Service::set_index_worker(const std::string& body, bool alive) const {
  return guarded([&]() -> Response {
    const auto name = field<std::string>(parse_body(body), "kind");
    IndexKind kind;
    try {
      kind = parse_index_kind(name);
    } catch (const Error&) {
      return {404, error_body("unknown index kind " + name)};
    }
    if (alive) {
      engine_.index().restore_index_worker(kind);
    } else {
      engine_.index().fail_index_worker(kind);
    }
    return {200, {{"kind", name}, {"failed", !alive}}};
  });
}

}  // namespace rasterix

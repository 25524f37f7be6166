// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <memory>
#include <string>
#include <thread>

#include <json.hpp>

#include "rasterix/query_engine.hpp"

namespace rasterix {

/// HTTP status for a library error code.
int http_status(ErrorCode code);

/// Parses a /v1/query request body. Throws invalid-argument on a missing or
/// malformed field.
Query parse_query_json(const nlohmann::json& body);

/// HTTP + JSON request handler in front of a QueryEngine.
///
///   GET  /v1/health               node and index-worker status
///   POST /v1/query                run a query, PGM heatmap as base64
///   POST /v1/admin/fail_node      {node_id}
///   POST /v1/admin/restore_node   {node_id}
///   POST /v1/admin/fail_index     {kind}
///   POST /v1/admin/restore_index  {kind}
class Service {
 public:
  explicit Service(QueryEngine& engine);
  ~Service();

  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds the listening socket; port 0 picks a free port. Returns the port.
  int bind(const std::string& host, int port);
  /// Serves on a background thread until stop().
  void start();
  /// Serves on the calling thread until stop().
  void run();
  void stop();

  struct Response {
    int status = 200;
    nlohmann::json body;
  };

  Response health() const;
  Response query(const std::string& body) const;
  Response set_node(const std::string& body, bool alive) const;
  Response set_index_worker(const std::string& body, bool alive) const;

 private:
  struct Impl;
  QueryEngine& engine_;
  std::unique_ptr<Impl> impl_;
  std::thread thread_;
};

}  // namespace rasterix

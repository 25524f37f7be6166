// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace rasterix {

enum class ErrorCode {
  InvalidArgument,
  Decode,
  Ingest,          // duplicate tile or duplicate ingest
  Replication,     // not enough live nodes to place replicas
  Unavailable,     // every replica of a tile is down
  Corruption,      // checksum mismatch or inconsistent metadata
  Timeout,
  Build,           // index construction failed
  NotFound,
  Io,
};

std::string_view to_string(ErrorCode code);

/// Base exception for every failure the library reports. The code drives
/// CLI exit status and HTTP status mapping.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& message);

}  // namespace rasterix

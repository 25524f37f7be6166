// Copyright 2026 The rasterix Authors
// SPDX-License-Identifier: Apache-2.0

#include "rasterix/error.hpp"

namespace rasterix {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Decode: return "decode";
    case ErrorCode::Ingest: return "ingest";
    case ErrorCode::Replication: return "replication";
    case ErrorCode::Unavailable: return "unavailable";
    case ErrorCode::Corruption: return "corruption";
    case ErrorCode::Timeout: return "timeout";
    case ErrorCode::Build: return "build";
    case ErrorCode::NotFound: return "not-found";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace rasterix

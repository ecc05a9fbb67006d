// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>
#include <string>

namespace atomnlu {

enum class ErrorCode {
  MalformedRecord,
  DuplicateId,
  TaskMismatch,
  MissingField,
  EmptyCandidates,
  KindMismatch,
  EmptyResults,
  EmptyReport,
  BackendUnavailable,
  Timeout,
  ProtocolError,
  InvalidConfig,
  InvalidArgument,
  Io,
};

const char* to_string(ErrorCode code);

inline bool is_backend_error(ErrorCode code) {
  return code == ErrorCode::BackendUnavailable || code == ErrorCode::Timeout ||
         code == ErrorCode::ProtocolError;
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace atomnlu

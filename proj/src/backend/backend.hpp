// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "codec/codec.hpp"
#include "core/types.hpp"
#include "metrics/metrics.hpp"
#include "util/rng.hpp"

namespace atomnlu::backend {

/// Decoding parameters. Beam search runs model-side; clients only forward them.
struct GenerationRequest {
  std::string prompt;
  std::size_t max_new_tokens = 128;
  std::size_t beam_width = 4;
  double temperature = 1.0;
  std::vector<std::string> stop_sequences;

  void validate() const;
};

struct BackendResult {
  std::string text;
  std::chrono::milliseconds latency{0};
  std::size_t attempt_count = 1;
};

class Backend {
 public:
  virtual ~Backend() = default;

  /// Throws Error(BackendUnavailable | Timeout | ProtocolError).
  virtual BackendResult generate(const GenerationRequest& request) = 0;

  /// Requests the backend accepts at once.
  virtual std::size_t max_concurrency() const { return std::numeric_limits<std::size_t>::max(); }
};

struct RetryPolicy {
  std::size_t attempts = 3;
  std::chrono::milliseconds initial_backoff{1000};
  double multiplier = 2.0;
  double jitter = 0.25;  // +/- fraction of each delay
};

/// Runs attempt() until it succeeds or the policy is exhausted. Errors coded
/// BackendUnavailable or Timeout are retried; anything else propagates at once.
/// attempt_count of the returned result is set here.
BackendResult with_retries(const RetryPolicy& policy, const std::function<BackendResult()>& attempt,
                           std::uint64_t jitter_seed = 0,
                           const std::function<void(std::chrono::milliseconds)>& sleep = {});

/// Returns the gold completion of the instance whose prompt has the same SHA-256.
class OracleBackend : public Backend {
 public:
  OracleBackend(const std::vector<AtomicInstance>& instances, codec::TemplateMode mode);

  BackendResult generate(const GenerationRequest& request) override;

  std::size_t size() const { return by_digest_.size(); }

 protected:
  const AtomicInstance* lookup(const std::string& prompt) const;

 private:
  std::map<std::string, AtomicInstance> by_digest_;
};

/// Oracle output with a seed-controlled fraction of answer units (extraction
/// lines or classification labels) deleted or corrupted. A unit is damaged iff
/// its hash-derived uniform draw is below the fraction, so damage is nested as
/// the fraction grows.
class ScrambleBackend : public OracleBackend {
 public:
  ScrambleBackend(const std::vector<AtomicInstance>& instances, codec::TemplateMode mode, double fraction,
                  std::uint64_t seed);

  BackendResult generate(const GenerationRequest& request) override;

 private:
  double fraction_;
  std::uint64_t seed_;
};

struct HttpConfig {
  std::string base_url;  // scheme://host[:port]
  std::string path = "/v1/completions";
  std::string model;
  std::string auth_env;  // variable holding the secret; empty disables auth
  std::string auth_header = "Authorization";
  std::string auth_prefix = "Bearer ";
  std::string model_field = "model";
  std::string prompt_field = "prompt";
  std::string max_tokens_field = "max_tokens";
  std::string temperature_field = "temperature";
  std::string stop_field = "stop";
  std::string beam_field;  // empty: beam width is not sent
  std::string response_pointer = "/choices/0/text";
  std::chrono::milliseconds timeout{60000};
  RetryPolicy retry;
  std::size_t max_concurrency = 8;
};

/// JSON completion endpoint with configurable field mapping.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpConfig config);

  BackendResult generate(const GenerationRequest& request) override;
  std::size_t max_concurrency() const override { return config_.max_concurrency; }

  /// Request body for a request, exposed for inspection.
  std::string request_body(const GenerationRequest& request) const;

 private:
  BackendResult attempt(const GenerationRequest& request) const;

  HttpConfig config_;
  mutable std::once_flag beam_warning_;
};

/// Child process speaking a length-prefixed protocol over stdin/stdout.
/// Frame: ASCII decimal byte length, '\n', then exactly that many bytes.
/// One request frame (the prompt) is answered by one reply frame.
class SubprocessBackend : public Backend {
 public:
  SubprocessBackend(std::string command, std::chrono::milliseconds timeout, RetryPolicy retry = {});
  ~SubprocessBackend() override;

  SubprocessBackend(const SubprocessBackend&) = delete;
  SubprocessBackend& operator=(const SubprocessBackend&) = delete;

  BackendResult generate(const GenerationRequest& request) override;
  std::size_t max_concurrency() const override { return 1; }

 private:
  BackendResult attempt(const GenerationRequest& request);
  void spawn();
  void terminate();

  std::string command_;
  std::chrono::milliseconds timeout_;
  RetryPolicy retry_;
  std::mutex mutex_;
  int pid_ = -1;
  int fd_ = -1;
};

/// Frame helpers shared with test doubles.
std::string encode_frame(std::string_view payload);

struct EvalOptions {
  std::size_t parallelism = 1;
  std::uint64_t seed = 0;
  codec::TemplateMode mode = codec::TemplateMode::LanguageAgnostic;
  GenerationRequest defaults;  // prompt is ignored
  /// Append-only progress log; completed instances found here are not re-queried.
  std::optional<std::filesystem::path> journal;
};

/// Queries the backend for every instance with at most `parallelism` requests
/// in flight. Results come back in instance-id order. A failed instance yields
/// an empty answer with a BackendFailure anomaly; Error(BackendUnavailable) is
/// thrown only when every instance of some dataset failed. On success the
/// journal is rewritten in id order.
std::vector<metrics::EvalResult> run_eval(const std::vector<AtomicInstance>& instances, Backend& backend,
                                          const EvalOptions& options);

}  // namespace atomnlu::backend

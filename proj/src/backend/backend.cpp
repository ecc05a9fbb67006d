// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <thread>

#include "backend/backend.hpp"

namespace atomnlu::backend {

void GenerationRequest::validate() const {
  if (beam_width < 1) throw Error(ErrorCode::InvalidArgument, "beam width must be >= 1");
  if (max_new_tokens < 1) throw Error(ErrorCode::InvalidArgument, "max_new_tokens must be >= 1");
  if (!(temperature > 0)) throw Error(ErrorCode::InvalidArgument, "temperature must be positive");
}

BackendResult with_retries(const RetryPolicy& policy, const std::function<BackendResult()>& attempt,
                           std::uint64_t jitter_seed, const std::function<void(std::chrono::milliseconds)>& sleep) {
  util::Rng rng(jitter_seed);
  const std::size_t attempts = std::max<std::size_t>(1, policy.attempts);
  double delay = static_cast<double>(policy.initial_backoff.count());
  for (std::size_t n = 1;; ++n) {
    try {
      auto r = attempt();
      r.attempt_count = n;
      return r;
    } catch (const Error& e) {
      const bool retryable = e.code() == ErrorCode::BackendUnavailable || e.code() == ErrorCode::Timeout;
      if (!retryable || n >= attempts) throw;
    }
    const double factor = 1.0 + policy.jitter * (2.0 * rng.unit() - 1.0);
    const auto wait = std::chrono::milliseconds(static_cast<long long>(std::llround(delay * factor)));
    if (sleep)
      sleep(wait);
    else
      std::this_thread::sleep_for(wait);
    delay *= policy.multiplier;
  }
}

}  // namespace atomnlu::backend

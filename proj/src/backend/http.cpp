// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>

#include <httplib.h>

#include "backend/backend.hpp"
#include "core/json_io.hpp"
#include "util/log.hpp"

namespace atomnlu::backend {

HttpBackend::HttpBackend(HttpConfig config) : config_(std::move(config)) {
  if (config_.base_url.empty()) throw Error(ErrorCode::InvalidConfig, "http backend needs a base URL");
  if (config_.prompt_field.empty() || config_.response_pointer.empty())
    throw Error(ErrorCode::InvalidConfig, "http backend needs prompt and response field mappings");
}

std::string HttpBackend::request_body(const GenerationRequest& request) const {
  Json body = Json::object();
  if (!config_.model.empty() && !config_.model_field.empty()) body[config_.model_field] = config_.model;
  body[config_.prompt_field] = request.prompt;
  if (!config_.max_tokens_field.empty()) body[config_.max_tokens_field] = request.max_new_tokens;
  if (!config_.temperature_field.empty()) body[config_.temperature_field] = request.temperature;
  if (!config_.stop_field.empty() && !request.stop_sequences.empty())
    body[config_.stop_field] = request.stop_sequences;
  if (!config_.beam_field.empty()) {
    body[config_.beam_field] = request.beam_width;
  } else if (request.beam_width > 1) {
    std::call_once(beam_warning_, [&] {
      log::info("http backend: endpoint mapping has no beam field; beam width " +
                std::to_string(request.beam_width) + " is not sent");
    });
  }
  return dump_line(body);
}

BackendResult HttpBackend::attempt(const GenerationRequest& request) const {
  const auto start = std::chrono::steady_clock::now();
  httplib::Client client(config_.base_url);
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);
  httplib::Headers headers;
  if (!config_.auth_env.empty()) {
    const char* secret = std::getenv(config_.auth_env.c_str());
    if (!secret || !*secret)
      throw Error(ErrorCode::InvalidConfig, "environment variable " + config_.auth_env + " is not set");
    headers.emplace(config_.auth_header, config_.auth_prefix + secret);
  }
  auto res = client.Post(config_.path, headers, request_body(request), "application/json");
  const auto elapsed =
      std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - start);
  if (!res) {
    const auto err = res.error();
    if (err == httplib::Error::ConnectionTimeout || (err == httplib::Error::Read && elapsed >= config_.timeout))
      throw Error(ErrorCode::Timeout, "request exceeded " + std::to_string(config_.timeout.count()) + " ms");
    throw Error(ErrorCode::BackendUnavailable, "http: " + httplib::to_string(err));
  }
  if (res->status == 429 || res->status >= 500)
    throw Error(ErrorCode::BackendUnavailable, "http status " + std::to_string(res->status));
  if (res->status != 200) throw Error(ErrorCode::ProtocolError, "http status " + std::to_string(res->status));
  Json reply;
  try {
    reply = Json::parse(res->body);
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::ProtocolError, std::string("response is not JSON: ") + e.what());
  }
  const Json::json_pointer ptr(config_.response_pointer);
  if (!reply.contains(ptr) || !reply.at(ptr).is_string())
    throw Error(ErrorCode::ProtocolError, "response has no string at " + config_.response_pointer);
  return {reply.at(ptr).get<std::string>(), elapsed, 1};
}

BackendResult HttpBackend::generate(const GenerationRequest& request) {
  request.validate();
  return with_retries(config_.retry, [&] { return attempt(request); },
                      util::fnv1a64(request.prompt));
}

}  // namespace atomnlu::backend

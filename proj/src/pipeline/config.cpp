// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

#include <charconv>
#include <functional>
#include <map>

#include "pipeline/pipeline.hpp"
#include "util/text.hpp"

namespace atomnlu::pipeline {
namespace {

[[noreturn]] void bad(std::string_view key, std::string_view value, std::string_view why) {
  throw Error(ErrorCode::InvalidConfig,
              "bad value '" + std::string(value) + "' for " + std::string(key) + ": " + std::string(why));
}

std::uint64_t to_uint(std::string_view key, std::string_view v) {
  v = util::trim(v);
  std::uint64_t out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty()) bad(key, v, "expected a non-negative integer");
  return out;
}

double to_double(std::string_view key, std::string_view v) {
  v = util::trim(v);
  double out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size() || v.empty()) bad(key, v, "expected a number");
  return out;
}

// "\t", "\n", "\s" (space) and "\\" escapes; the bare word "tab" is a tab.
std::string unescape(std::string_view v) {
  if (v == "tab") return "\t";
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == '\\' && i + 1 < v.size()) {
      char n = v[++i];
      out += n == 't' ? '\t' : n == 'n' ? '\n' : n == 's' ? ' ' : n;
    } else {
      out += v[i];
    }
  }
  return out;
}

std::string escape(std::string_view v) {
  std::string out;
  for (char c : v) {
    if (c == '\t') out += "\\t";
    else if (c == '\n') out += "\\n";
    else if (c == '\\') out += "\\\\";
    else out += c;
  }
  return out;
}

std::vector<std::string> list(std::string_view v) {
  std::vector<std::string> out;
  for (const auto& part : util::split(v, ","))
    if (auto t = util::trim_copy(part); !t.empty()) out.push_back(t);
  return out;
}

std::set<DatasetRole> roles(std::string_view key, std::string_view v) {
  std::set<DatasetRole> out;
  for (const auto& r : list(v)) {
    try {
      out.insert(parse_role(r));
    } catch (const Error& e) {
      bad(key, v, e.what());
    }
  }
  if (out.empty()) bad(key, v, "expected at least one role");
  return out;
}

struct Key {
  std::string help;
  std::function<void(RunConfig&, std::string_view key, std::string_view value)> apply;
};

const std::map<std::string, Key, std::less<>>& keys() {
  using C = RunConfig;
  using SV = std::string_view;
  static const std::map<std::string, Key, std::less<>> k{
      {"run.registry", {"registry.json or a directory holding one", [](C& c, SV, SV v) { c.registry = std::string(v); }}},
      {"run.out", {"output directory", [](C& c, SV, SV v) { c.out = std::string(v); }}},
      {"run.input", {"command input file", [](C& c, SV, SV v) { c.input = std::string(v); }}},
      {"run.seed", {"root seed", [](C& c, SV k, SV v) { c.seed = to_uint(k, v); }}},
      {"run.template", {"agnostic | language-specific",
                        [](C& c, SV k, SV v) {
                          try {
                            c.template_mode = codec::parse_template_mode(v);
                          } catch (const Error& e) {
                            bad(k, v, e.what());
                          }
                        }}},
      {"run.parallelism", {"concurrent backend requests", [](C& c, SV k, SV v) { c.parallelism = to_uint(k, v); }}},
      {"run.sample_size", {"eval records per dataset and atomic kind",
                           [](C& c, SV k, SV v) { c.sample_size = to_uint(k, v); }}},
      {"run.train_roles", {"roles used for training corpora", [](C& c, SV k, SV v) { c.train_roles = roles(k, v); }}},
      {"run.eval_roles", {"roles evaluated", [](C& c, SV k, SV v) { c.eval_roles = roles(k, v); }}},
      {"run.train_split", {"split used for training corpora", [](C& c, SV, SV v) { c.train_split = std::string(v); }}},
      {"run.eval_split", {"split evaluated", [](C& c, SV, SV v) { c.eval_split = std::string(v); }}},
      {"run.segment_separator", {"joins ET mention / NLI sentences (escapes allowed)",
                                 [](C& c, SV, SV v) { c.segment_separator = unescape(v); }}},
      {"run.stage", {"pretrain | finetune",
                     [](C& c, SV k, SV v) {
                       try {
                         c.stage = augment::parse_stage(v);
                       } catch (const Error& e) {
                         bad(k, v, e.what());
                       }
                     }}},
      {"augment.k", {"instructions per source instance", [](C& c, SV k, SV v) { c.augmentation.k = to_uint(k, v); }}},
      {"augment.m_pos", {"max positives", [](C& c, SV k, SV v) { c.augmentation.m_pos = to_uint(k, v); }}},
      {"augment.m_neg", {"max negatives", [](C& c, SV k, SV v) { c.augmentation.m_neg = to_uint(k, v); }}},
      {"balance.n_balance", {"instructions per (dataset, positive label)",
                             [](C& c, SV k, SV v) { c.balance.n_balance = to_uint(k, v); }}},
      {"balance.exempt_tasks", {"tasks skipped by balancing",
                                [](C& c, SV k, SV v) {
                                  std::set<TaskKind> tasks;
                                  for (const auto& t : list(v)) {
                                    try {
                                      tasks.insert(parse_task(t));
                                    } catch (const Error& e) {
                                      bad(k, v, e.what());
                                    }
                                  }
                                  c.balance.exempt_tasks = tasks;
                                }}},
      {"backend.kind", {"http | subprocess | oracle | scramble", [](C& c, SV, SV v) { c.backend.kind = std::string(v); }}},
      {"backend.endpoint", {"HTTP base URL", [](C& c, SV, SV v) { c.backend.http.base_url = std::string(v); }}},
      {"backend.path", {"HTTP completion path", [](C& c, SV, SV v) { c.backend.http.path = std::string(v); }}},
      {"backend.model", {"model name sent with each request", [](C& c, SV, SV v) { c.backend.http.model = std::string(v); }}},
      {"backend.auth_env", {"environment variable holding the secret",
                            [](C& c, SV, SV v) { c.backend.http.auth_env = std::string(v); }}},
      {"backend.auth_header", {"auth header name", [](C& c, SV, SV v) { c.backend.http.auth_header = std::string(v); }}},
      {"backend.auth_prefix", {"auth value prefix", [](C& c, SV, SV v) { c.backend.http.auth_prefix = unescape(v); }}},
      {"backend.model_field", {"request field", [](C& c, SV, SV v) { c.backend.http.model_field = std::string(v); }}},
      {"backend.prompt_field", {"request field", [](C& c, SV, SV v) { c.backend.http.prompt_field = std::string(v); }}},
      {"backend.max_tokens_field", {"request field",
                                    [](C& c, SV, SV v) { c.backend.http.max_tokens_field = std::string(v); }}},
      {"backend.temperature_field", {"request field",
                                     [](C& c, SV, SV v) { c.backend.http.temperature_field = std::string(v); }}},
      {"backend.stop_field", {"request field", [](C& c, SV, SV v) { c.backend.http.stop_field = std::string(v); }}},
      {"backend.beam_field", {"request field; empty drops the beam width",
                              [](C& c, SV, SV v) { c.backend.http.beam_field = std::string(v); }}},
      {"backend.response_pointer", {"JSON pointer to the completion text",
                                    [](C& c, SV, SV v) { c.backend.http.response_pointer = std::string(v); }}},
      {"backend.max_concurrency", {"HTTP requests in flight",
                                   [](C& c, SV k, SV v) { c.backend.http.max_concurrency = to_uint(k, v); }}},
      {"backend.timeout_ms", {"request timeout",
                              [](C& c, SV k, SV v) {
                                c.backend.timeout = std::chrono::milliseconds(to_uint(k, v));
                                c.backend.http.timeout = c.backend.timeout;
                              }}},
      {"backend.command", {"subprocess command line", [](C& c, SV, SV v) { c.backend.command = std::string(v); }}},
      {"backend.scramble_fraction", {"share of answer units damaged by the scramble backend",
                                     [](C& c, SV k, SV v) { c.backend.scramble_fraction = to_double(k, v); }}},
      {"retry.attempts", {"attempts per request", [](C& c, SV k, SV v) { c.backend.http.retry.attempts = to_uint(k, v); }}},
      {"retry.initial_backoff_ms", {"first backoff",
                                    [](C& c, SV k, SV v) {
                                      c.backend.http.retry.initial_backoff = std::chrono::milliseconds(to_uint(k, v));
                                    }}},
      {"retry.multiplier", {"backoff growth", [](C& c, SV k, SV v) { c.backend.http.retry.multiplier = to_double(k, v); }}},
      {"retry.jitter", {"backoff jitter fraction", [](C& c, SV k, SV v) { c.backend.http.retry.jitter = to_double(k, v); }}},
      {"decode.max_new_tokens", {"answer token budget",
                                 [](C& c, SV k, SV v) { c.backend.decode.max_new_tokens = to_uint(k, v); }}},
      {"decode.beam_width", {"beam size", [](C& c, SV k, SV v) { c.backend.decode.beam_width = to_uint(k, v); }}},
      {"decode.temperature", {"sampling temperature",
                              [](C& c, SV k, SV v) { c.backend.decode.temperature = to_double(k, v); }}},
      {"decode.stop", {"comma-separated stop sequences (escapes allowed)",
                       [](C& c, SV, SV v) {
                         c.backend.decode.stop_sequences.clear();
                         for (const auto& s : list(v)) c.backend.decode.stop_sequences.push_back(unescape(s));
                       }}},
  };
  return k;
}

Json roles_json(const std::set<DatasetRole>& r) {
  Json a = Json::array();
  for (auto role : r) a.push_back(to_string(role));
  return a;
}

}  // namespace

void RunConfig::set(std::string_view key, std::string_view value) {
  auto it = keys().find(key);
  if (it == keys().end()) throw Error(ErrorCode::InvalidConfig, "unknown setting '" + std::string(key) + "'");
  it->second.apply(*this, key, util::trim(value));
}

Json RunConfig::to_json() const {
  Json exempt = Json::array();
  for (auto t : balance.exempt_tasks) exempt.push_back(to_string(t));
  Json stops = Json::array();
  for (const auto& s : backend.decode.stop_sequences) stops.push_back(escape(s));
  Json backend_json = {{"kind", backend.kind}};
  if (backend.kind == "http") {
    backend_json["endpoint"] = backend.http.base_url;
    backend_json["path"] = backend.http.path;
    backend_json["model"] = backend.http.model;
    backend_json["response_pointer"] = backend.http.response_pointer;
  } else if (backend.kind == "subprocess") {
    backend_json["command"] = backend.command;
  } else if (backend.kind == "scramble") {
    backend_json["scramble_fraction"] = backend.scramble_fraction;
  }
  return Json{
      {"registry", registry.generic_string()},
      {"seed", seed},
      {"template", codec::to_string(template_mode)},
      {"sample_size", sample_size},
      {"train_roles", roles_json(train_roles)},
      {"eval_roles", roles_json(eval_roles)},
      {"train_split", train_split},
      {"eval_split", eval_split},
      {"segment_separator", escape(segment_separator)},
      {"stage", augment::to_string(stage)},
      {"augment", {{"k", augmentation.k}, {"m_pos", augmentation.m_pos}, {"m_neg", augmentation.m_neg}}},
      {"balance", {{"n_balance", balance.n_balance}, {"exempt_tasks", exempt}}},
      {"backend", backend_json},
      {"decode",
       {{"max_new_tokens", backend.decode.max_new_tokens},
        {"beam_width", backend.decode.beam_width},
        {"temperature", backend.decode.temperature},
        {"stop", stops}}},
  };
}

void RunConfig::validate() const {
  auto invalid = [](const std::string& m) { throw Error(ErrorCode::InvalidConfig, m); };
  if (parallelism == 0) invalid("parallelism must be at least 1");
  if (sample_size == 0) invalid("sample size must be at least 1");
  if (segment_separator.empty()) invalid("segment separator must not be empty");
  if (out.empty()) invalid("output directory must be set");
  static const std::set<std::string> kinds{"http", "subprocess", "oracle", "scramble"};
  if (!kinds.count(backend.kind)) invalid("unknown backend '" + backend.kind + "'");
  if (backend.kind == "http" && backend.http.base_url.empty()) invalid("http backend needs an endpoint");
  if (backend.kind == "subprocess" && backend.command.empty()) invalid("subprocess backend needs a command");
  if (backend.scramble_fraction < 0 || backend.scramble_fraction > 1) invalid("scramble fraction must lie in [0, 1]");
  if (backend.http.retry.attempts == 0) invalid("retry attempts must be at least 1");
  if (!registry.empty() && !std::filesystem::exists(registry))
    throw Error(ErrorCode::Io, "registry not found: " + registry.string());
  if (input && !std::filesystem::exists(*input)) throw Error(ErrorCode::Io, "input not found: " + input->string());
  augmentation.validate();
  balance.validate();
  backend.decode.validate();
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  if (!std::filesystem::is_regular_file(path)) throw Error(ErrorCode::Io, "config file not found: " + path.string());
  try {
    pt::read_ini(path.string(), tree);
  } catch (const pt::ini_parser_error& e) {
    throw Error(ErrorCode::InvalidConfig, e.what());
  }
  const auto base = path.parent_path();
  for (const auto& [section, body] : tree) {
    if (body.empty()) throw Error(ErrorCode::InvalidConfig, "setting '" + section + "' outside a section");
    for (const auto& [name, value] : body) {
      const std::string key = section + "." + name;
      config.set(key, value.data());
      if (key == "run.registry" && config.registry.is_relative()) config.registry = base / config.registry;
      if (key == "run.out" && config.out.is_relative()) config.out = base / config.out;
      if (key == "run.input" && config.input->is_relative()) config.input = base / *config.input;
    }
  }
}

RunConfig load_config(const std::filesystem::path& path) {
  RunConfig c;
  apply_config_file(c, path);
  return c;
}

std::vector<std::pair<std::string, std::string>> config_keys() {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [k, v] : keys()) out.emplace_back(k, v.help);
  return out;
}

}  // namespace atomnlu::pipeline

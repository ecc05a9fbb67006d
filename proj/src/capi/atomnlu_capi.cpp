// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "atomnlu/atomnlu.h"

#include <new>
#include <string>

#include "codec/codec.hpp"
#include "core/json_io.hpp"
#include "metrics/metrics.hpp"
#include "pipeline/pipeline.hpp"
#include "ptgen/ptgen.hpp"
#include "util/log.hpp"

struct atomnlu_context {
  std::string message;
  std::string code;
};

struct atomnlu_config {
  atomnlu::pipeline::RunConfig config;
};

struct atomnlu_buffer {
  std::string data;
};

namespace {

using atomnlu::Error;
using atomnlu::ErrorCode;
using atomnlu::Json;

atomnlu_status status_for(ErrorCode code) {
  if (atomnlu::is_backend_error(code)) return ATOMNLU_ERR_BACKEND;
  if (code == ErrorCode::Io) return ATOMNLU_ERR_IO;
  if (code == ErrorCode::InvalidArgument) return ATOMNLU_ERR_INVALID_ARGUMENT;
  return ATOMNLU_ERR_VALIDATION;
}

template <class Fn>
atomnlu_status guarded(atomnlu_context* ctx, Fn&& fn) {
  auto fail = [&](atomnlu_status s, const char* code, const std::string& msg) {
    if (ctx) {
      ctx->code = code;
      ctx->message = msg;
    }
    return s;
  };
  try {
    fn();
    if (ctx) {
      ctx->code.clear();
      ctx->message.clear();
    }
    return ATOMNLU_OK;
  } catch (const Error& e) {
    return fail(status_for(e.code()), atomnlu::to_string(e.code()), e.what());
  } catch (const Json::exception& e) {
    return fail(ATOMNLU_ERR_VALIDATION, "MalformedRecord", std::string("MalformedRecord: ") + e.what());
  } catch (const std::bad_alloc&) {
    return fail(ATOMNLU_ERR_INTERNAL, "Internal", "out of memory");
  } catch (const std::exception& e) {
    return fail(ATOMNLU_ERR_INTERNAL, "Internal", e.what());
  }
}

void require(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be null");
}

void emit(atomnlu_buffer** out, std::string data) {
  require(out, "output pointer");
  *out = new atomnlu_buffer{std::move(data)};
}

Json parse_json(const char* text, const char* what) {
  require(text, what);
  auto j = Json::parse(text, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::MalformedRecord, std::string(what) + " is not valid JSON");
  return j;
}

}  // namespace

extern "C" {

const char* atomnlu_version(void) {
  static const std::string v = atomnlu::pipeline::version();
  return v.c_str();
}

atomnlu_context* atomnlu_context_create(void) { return new (std::nothrow) atomnlu_context(); }
void atomnlu_context_destroy(atomnlu_context* ctx) { delete ctx; }

const char* atomnlu_last_error(const atomnlu_context* ctx) { return ctx ? ctx->message.c_str() : ""; }
const char* atomnlu_last_error_code(const atomnlu_context* ctx) { return ctx ? ctx->code.c_str() : ""; }

const char* atomnlu_status_name(atomnlu_status status) {
  switch (status) {
    case ATOMNLU_OK: return "ok";
    case ATOMNLU_ERR_VALIDATION: return "validation";
    case ATOMNLU_ERR_BACKEND: return "backend";
    case ATOMNLU_ERR_IO: return "io";
    case ATOMNLU_ERR_INVALID_ARGUMENT: return "invalid-argument";
    case ATOMNLU_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

void atomnlu_set_log_level(atomnlu_log_level level) {
  atomnlu::log::set_level(static_cast<atomnlu::log::Level>(level));
}

atomnlu_status atomnlu_config_create(atomnlu_context* ctx, atomnlu_config** out) {
  return guarded(ctx, [&] {
    require(out, "output pointer");
    *out = new atomnlu_config();
  });
}

void atomnlu_config_destroy(atomnlu_config* cfg) { delete cfg; }

atomnlu_status atomnlu_config_load(atomnlu_context* ctx, atomnlu_config* cfg, const char* path) {
  return guarded(ctx, [&] {
    require(cfg, "config");
    require(path, "path");
    atomnlu::pipeline::apply_config_file(cfg->config, path);
  });
}

atomnlu_status atomnlu_config_set(atomnlu_context* ctx, atomnlu_config* cfg, const char* key, const char* value) {
  return guarded(ctx, [&] {
    require(cfg, "config");
    require(key, "key");
    require(value, "value");
    cfg->config.set(key, value);
  });
}

atomnlu_status atomnlu_config_dump(atomnlu_context* ctx, const atomnlu_config* cfg, atomnlu_buffer** out) {
  return guarded(ctx, [&] {
    require(cfg, "config");
    auto j = cfg->config.to_json();
    j["out"] = cfg->config.out.generic_string();
    j["parallelism"] = cfg->config.parallelism;
    emit(out, atomnlu::dump_pretty(j));
  });
}

atomnlu_status atomnlu_run(atomnlu_context* ctx, const char* command, const atomnlu_config* cfg,
                           atomnlu_buffer** summary) {
  return guarded(ctx, [&] {
    require(command, "command");
    require(cfg, "config");
    auto result = atomnlu::pipeline::run_command(command, cfg->config);
    if (summary) emit(summary, std::move(result.summary));
  });
}

atomnlu_status atomnlu_render_prompt(atomnlu_context* ctx, const char* instance_json, const char* template_mode,
                                     atomnlu_buffer** out) {
  return guarded(ctx, [&] {
    auto inst = atomnlu::instance_from_json(parse_json(instance_json, "instance"));
    auto mode = template_mode ? atomnlu::codec::parse_template_mode(template_mode)
                              : atomnlu::codec::TemplateMode::LanguageAgnostic;
    emit(out, atomnlu::codec::render_prompt(inst, mode));
  });
}

atomnlu_status atomnlu_render_gold_completion(atomnlu_context* ctx, const char* instance_json, atomnlu_buffer** out) {
  return guarded(ctx, [&] {
    auto inst = atomnlu::instance_from_json(parse_json(instance_json, "instance"));
    emit(out, atomnlu::codec::render_gold_completion(inst));
  });
}

atomnlu_status atomnlu_parse_response(atomnlu_context* ctx, const char* instance_json, const char* completion,
                                      atomnlu_buffer** out) {
  return guarded(ctx, [&] {
    require(completion, "completion");
    auto inst = atomnlu::instance_from_json(parse_json(instance_json, "instance"));
    auto parsed = atomnlu::codec::parse_response(inst.kind, inst.candidates, completion);
    Json anomalies = Json::array();
    for (const auto& a : parsed.anomalies)
      anomalies.push_back(Json{{"kind", atomnlu::codec::to_string(a.kind)}, {"payload", a.payload}});
    emit(out, atomnlu::dump_line(Json{{"answer", atomnlu::to_json(parsed.answers)}, {"anomalies", anomalies}}));
  });
}

atomnlu_status atomnlu_rouge(atomnlu_context* ctx, const char* prediction, const char* reference, const char* lang,
                             atomnlu_buffer** out) {
  return guarded(ctx, [&] {
    require(prediction, "prediction");
    require(reference, "reference");
    require(lang, "lang");
    const auto l = atomnlu::parse_lang(lang);
    const auto p = atomnlu::metrics::tokenize(prediction, l);
    const auto r = atomnlu::metrics::tokenize(reference, l);
    emit(out, atomnlu::dump_line(Json{{"rouge1", atomnlu::metrics::rouge_n(p, r, 1)},
                                      {"rouge2", atomnlu::metrics::rouge_n(p, r, 2)},
                                      {"rougeL", atomnlu::metrics::rouge_l(p, r)}}));
  });
}

atomnlu_status atomnlu_build_pt_prompt(atomnlu_context* ctx, const char* kind, const char* lang, const char* text,
                                       atomnlu_buffer** out) {
  return guarded(ctx, [&] {
    require(kind, "kind");
    require(lang, "lang");
    require(text, "text");
    auto p = atomnlu::ptgen::build_pt_prompt(atomnlu::ptgen::parse_pt_kind(kind), atomnlu::parse_lang(lang), text);
    emit(out, std::move(p.rendered));
  });
}

atomnlu_status atomnlu_parse_pt_response(atomnlu_context* ctx, const char* kind, const char* lang, const char* text,
                                         const char* response, atomnlu_buffer** out) {
  return guarded(ctx, [&] {
    require(kind, "kind");
    require(lang, "lang");
    require(text, "text");
    require(response, "response");
    auto r = atomnlu::ptgen::parse_pt_response(atomnlu::ptgen::parse_pt_kind(kind), atomnlu::parse_lang(lang), "sample",
                                               text, response);
    Json failures = Json::array();
    for (auto f : r.failures) failures.push_back(atomnlu::ptgen::to_string(f));
    Json j{{"ok", r.ok()}, {"failures", failures}, {"detail", r.detail}};
    if (r.sample) {
      const auto& s = *r.sample;
      if (s.kind == atomnlu::ptgen::PtKind::ClsBundle) {
        j["sample"] = Json{{"categories", s.categories}, {"sentiment", s.sentiment}, {"intent", s.intent}};
      } else {
        Json ents = Json::object();
        for (const auto& [e, types] : s.entities) ents[e] = types;
        j["sample"] = Json{{"entities", ents}};
      }
    }
    emit(out, atomnlu::dump_line(j));
  });
}

const char* atomnlu_buffer_data(const atomnlu_buffer* buf) { return buf ? buf->data.c_str() : ""; }
size_t atomnlu_buffer_size(const atomnlu_buffer* buf) { return buf ? buf->data.size() : 0; }
void atomnlu_buffer_free(atomnlu_buffer* buf) { delete buf; }

}  // extern "C"

// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#ifndef ATOMNLU_ATOMNLU_H
#define ATOMNLU_ATOMNLU_H

#include <stddef.h>
#include <stdint.h>

#if defined(ATOMNLU_BUILDING_LIBRARY)
#define ATOMNLU_API __attribute__((visibility("default")))
#else
#define ATOMNLU_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum atomnlu_status {
  ATOMNLU_OK = 0,
  ATOMNLU_ERR_VALIDATION = 1,
  ATOMNLU_ERR_BACKEND = 2,
  ATOMNLU_ERR_IO = 3,
  ATOMNLU_ERR_INVALID_ARGUMENT = 4,
  ATOMNLU_ERR_INTERNAL = 5
} atomnlu_status;

typedef enum atomnlu_log_level {
  ATOMNLU_LOG_DEBUG = 0,
  ATOMNLU_LOG_INFO = 1,
  ATOMNLU_LOG_WARN = 2,
  ATOMNLU_LOG_ERROR = 3,
  ATOMNLU_LOG_OFF = 4
} atomnlu_log_level;

/* Holds the last error of calls made through it. Not thread-safe; use one per thread. */
typedef struct atomnlu_context atomnlu_context;
typedef struct atomnlu_config atomnlu_config;

/* Library-owned bytes; release with atomnlu_buffer_free. */
typedef struct atomnlu_buffer atomnlu_buffer;

ATOMNLU_API const char* atomnlu_version(void);

ATOMNLU_API atomnlu_context* atomnlu_context_create(void);
ATOMNLU_API void atomnlu_context_destroy(atomnlu_context* ctx);

/* Message and error-code name of the last failed call; "" after success. */
ATOMNLU_API const char* atomnlu_last_error(const atomnlu_context* ctx);
ATOMNLU_API const char* atomnlu_last_error_code(const atomnlu_context* ctx);

ATOMNLU_API const char* atomnlu_status_name(atomnlu_status status);

ATOMNLU_API void atomnlu_set_log_level(atomnlu_log_level level);

ATOMNLU_API atomnlu_status atomnlu_config_create(atomnlu_context* ctx, atomnlu_config** out);
ATOMNLU_API void atomnlu_config_destroy(atomnlu_config* cfg);
/* INI file; relative paths resolve against its directory. */
ATOMNLU_API atomnlu_status atomnlu_config_load(atomnlu_context* ctx, atomnlu_config* cfg, const char* path);
/* One "section.key" setting, e.g. "run.seed" = "7". */
ATOMNLU_API atomnlu_status atomnlu_config_set(atomnlu_context* ctx, atomnlu_config* cfg, const char* key,
                                              const char* value);
/* Effective settings as JSON. */
ATOMNLU_API atomnlu_status atomnlu_config_dump(atomnlu_context* ctx, const atomnlu_config* cfg,
                                               atomnlu_buffer** out);

/* Runs one pipeline command; *summary (optional) receives a human-readable summary. */
ATOMNLU_API atomnlu_status atomnlu_run(atomnlu_context* ctx, const char* command, const atomnlu_config* cfg,
                                       atomnlu_buffer** summary);

/* JSON-level helpers. Instances and answers use the JSONL record layout. */
ATOMNLU_API atomnlu_status atomnlu_render_prompt(atomnlu_context* ctx, const char* instance_json,
                                                 const char* template_mode, atomnlu_buffer** out);
ATOMNLU_API atomnlu_status atomnlu_render_gold_completion(atomnlu_context* ctx, const char* instance_json,
                                                          atomnlu_buffer** out);
/* Result: {"answer": ..., "anomalies": [{"kind", "payload"}]} */
ATOMNLU_API atomnlu_status atomnlu_parse_response(atomnlu_context* ctx, const char* instance_json,
                                                  const char* completion, atomnlu_buffer** out);
/* Result: {"rouge1", "rouge2", "rougeL"} over the language tokenizer. */
ATOMNLU_API atomnlu_status atomnlu_rouge(atomnlu_context* ctx, const char* prediction, const char* reference,
                                         const char* lang, atomnlu_buffer** out);
ATOMNLU_API atomnlu_status atomnlu_build_pt_prompt(atomnlu_context* ctx, const char* kind, const char* lang,
                                                   const char* text, atomnlu_buffer** out);
/* Result: {"ok": bool, "failures": [...], "sample": {...}} */
ATOMNLU_API atomnlu_status atomnlu_parse_pt_response(atomnlu_context* ctx, const char* kind, const char* lang,
                                                     const char* text, const char* response, atomnlu_buffer** out);

ATOMNLU_API const char* atomnlu_buffer_data(const atomnlu_buffer* buf);
ATOMNLU_API size_t atomnlu_buffer_size(const atomnlu_buffer* buf);
ATOMNLU_API void atomnlu_buffer_free(atomnlu_buffer* buf);

#ifdef __cplusplus
}
#endif

#endif

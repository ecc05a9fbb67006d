// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "pipeline/pipeline.hpp"
#include "pipeline/workspace.hpp"
#include "util/digest.hpp"

#ifndef ATOMNLU_VERSION_STRING
#define ATOMNLU_VERSION_STRING "0.0.0"
#endif

namespace atomnlu::pipeline {
namespace {

Json file_entry(const RunConfig& config, const fs::path& p) {
  return Json{{"path", display_path(config, p)}, {"sha256", util::file_sha256(p)}};
}

}  // namespace

std::string version() { return ATOMNLU_VERSION_STRING; }

void write_manifest(const RunConfig& config, const fs::path& dir, const Manifest& manifest) {
  Json inputs = Json::array();
  for (const auto& p : manifest.inputs) inputs.push_back(file_entry(config, p));
  Json outputs = Json::array();
  for (const auto& p : manifest.outputs) outputs.push_back(file_entry(config, p));
  Json j{
      {"command", manifest.command},
      {"version", version()},
      {"seed", config.seed},
      {"config", config.to_json()},
      {"inputs", inputs},
      {"outputs", outputs},
  };
  if (manifest.upstream) j["upstream"] = file_entry(config, *manifest.upstream);
  if (!manifest.extra.empty()) j["details"] = manifest.extra;
  write_file(dir / "manifest.json", dump_pretty(j));
}

Json training_sidecar(augment::Stage stage) {
  Json sizes = Json::object();
  const std::tuple<const char*, int, int> table[] = {{"560M", 4, 32}, {"1B7", 4, 32}, {"3B", 2, 64}, {"7B1", 1, 128}};
  for (const auto& [name, batch, accum] : table)
    sizes[name] = Json{{"batch_size", batch}, {"grad_accumulation", accum}};
  return Json{
      {"stage", augment::to_string(stage)},
      {"learning_rate", 1e-4},
      {"max_steps", 4000},
      {"loss_mask", "prompt"},
      {"per_model_size", sizes},
  };
}

}  // namespace atomnlu::pipeline

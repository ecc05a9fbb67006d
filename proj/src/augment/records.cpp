// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "augment/augment.hpp"

namespace atomnlu::augment {

std::string_view to_string(Stage s) { return s == Stage::Pretrain ? "pretrain" : "finetune"; }

Stage parse_stage(std::string_view s) {
  if (s == "pretrain") return Stage::Pretrain;
  if (s == "finetune") return Stage::Finetune;
  throw Error(ErrorCode::InvalidArgument, "unknown stage '" + std::string(s) + "'");
}

std::vector<TrainingRecord> emit_training_records(const std::vector<AtomicInstance>& instances,
                                                  codec::TemplateMode mode, Stage stage) {
  std::vector<TrainingRecord> out;
  out.reserve(instances.size());
  for (const auto& inst : instances) {
    TrainingRecord r;
    r.prompt = codec::render_prompt(inst, mode);
    r.completion = codec::render_gold_completion(inst);
    r.dataset_id = inst.dataset_id;
    r.task = inst.task;
    r.kind = inst.kind;
    r.lang = inst.lang;
    r.stage = stage;
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace atomnlu::augment

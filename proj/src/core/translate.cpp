// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "core/translate.hpp"

#include <algorithm>

#include "core/ingest.hpp"
#include "core/task_text.hpp"
#include "util/text.hpp"

namespace atomnlu {
namespace {

AtomicInstance base_instance(const RawSample& raw, AtomicKind kind, std::size_t ordinal) {
  AtomicInstance inst;
  inst.id = instance_id(raw.dataset_id, raw.id, kind, ordinal);
  inst.source_id = raw.id;
  inst.dataset_id = raw.dataset_id;
  inst.task = raw.task;
  inst.kind = kind;
  inst.lang = raw.lang;
  return inst;
}

void add_span(Extractions& ex, const std::string& query, const std::string& span) {
  auto it = std::find_if(ex.begin(), ex.end(), [&](const auto& e) { return e.first == query; });
  if (it == ex.end())
    ex.emplace_back(query, std::vector<std::string>{span});
  else
    util::append_unique(it->second, span);
}

const AnswerSet& require_gold(const RawSample& raw, AtomicKind kind) {
  if (!raw.gold || raw.gold->kind != kind)
    throw Error(ErrorCode::MissingField, "sample " + raw.id + " lacks gold " +
                                             (kind == AtomicKind::Classification ? "labels" : "extractions"));
  return *raw.gold;
}

std::vector<AtomicInstance> translate_event(const RawSample& raw, const DatasetSchema& schema) {
  std::vector<AtomicInstance> out;
  std::size_t ordinal = 0;
  for (const auto& t : raw.triggers) {
    auto inst = base_instance(raw, AtomicKind::Classification, ordinal++);
    inst.input_text = task_text::event_question(raw.lang, raw.text, t.text);
    inst.candidates = schema.labels;
    inst.gold = AnswerSet::classification({t.event_type});
    out.push_back(std::move(inst));
  }
  auto ext = base_instance(raw, AtomicKind::Extraction, 0);
  ext.input_text = raw.text;
  ext.candidates = schema.queries;
  Extractions gold;
  for (const auto& t : raw.triggers) {
    add_span(gold, task_text::event_trigger_query(raw.lang, t.event_type), t.text);
    for (const auto& a : t.arguments) add_span(gold, task_text::event_role_query(raw.lang, t.event_type, a.role), a.text);
  }
  ext.gold = AnswerSet::extraction(std::move(gold));
  out.push_back(std::move(ext));
  return out;
}

std::vector<AtomicInstance> translate_relation(const RawSample& raw, const DatasetSchema& schema) {
  std::vector<AtomicInstance> out;
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const auto& r : raw.relations) {
    std::pair<std::string, std::string> p{r.subject, r.object};
    if (std::find(pairs.begin(), pairs.end(), p) == pairs.end()) pairs.push_back(std::move(p));
  }
  std::size_t ordinal = 0;
  for (const auto& [subj, obj] : pairs) {
    auto inst = base_instance(raw, AtomicKind::Classification, ordinal++);
    inst.input_text = task_text::relation_question(raw.lang, raw.text, subj, obj);
    inst.candidates = schema.labels;
    std::vector<std::string> labels;
    for (const auto& r : raw.relations)
      if (r.subject == subj && r.object == obj) util::append_unique(labels, r.relation);
    inst.gold = AnswerSet::classification(std::move(labels));
    out.push_back(std::move(inst));
  }

  auto ext = base_instance(raw, AtomicKind::Extraction, 0);
  ext.input_text = raw.text;
  std::vector<std::string> relation_types;
  for (const auto& r : raw.relations) util::append_unique(relation_types, r.relation);
  Extractions gold;
  if (relation_types.empty()) {
    ext.candidates = schema.queries;
  } else {
    for (const auto& rel : relation_types) {
      auto obj_q = task_text::relation_object_query(raw.lang, rel);
      auto subj_q = task_text::relation_subject_query(raw.lang, rel);
      ext.candidates.push_back(obj_q);
      ext.candidates.push_back(subj_q);
      std::vector<std::string> objects, subjects;
      for (const auto& r : raw.relations) {
        if (r.relation != rel) continue;
        util::append_unique(objects, r.object);
        util::append_unique(subjects, r.subject);
      }
      gold.emplace_back(obj_q, std::move(objects));
      gold.emplace_back(subj_q, std::move(subjects));
    }
  }
  ext.gold = AnswerSet::extraction(std::move(gold));
  out.push_back(std::move(ext));
  return out;
}

}  // namespace

std::string instance_id(std::string_view dataset_id, std::string_view source_id, AtomicKind kind, std::size_t ordinal) {
  std::string id;
  id.append(dataset_id).append("/").append(source_id).append("/").append(to_string(kind)).append("/");
  id.append(std::to_string(ordinal));
  return id;
}

DatasetSchema build_schema(const DatasetDescriptor& d) {
  DatasetSchema s;
  s.lang = d.lang;
  if (is_label_task(d.task)) {
    s.labels = d.label_universe;
  } else if (is_extraction_task(d.task)) {
    s.queries = d.label_universe;
  } else if (d.task == TaskKind::EE) {
    s.labels = d.label_universe;
    for (const auto& type : d.label_universe) {
      util::append_unique(s.queries, task_text::event_trigger_query(d.lang, type));
      auto it = std::find_if(d.event_roles.begin(), d.event_roles.end(), [&](const auto& e) { return e.first == type; });
      if (it == d.event_roles.end()) continue;
      for (const auto& role : it->second) util::append_unique(s.queries, task_text::event_role_query(d.lang, type, role));
    }
  } else {
    s.labels = d.label_universe;
    for (const auto& rel : d.label_universe) {
      util::append_unique(s.queries, task_text::relation_object_query(d.lang, rel));
      util::append_unique(s.queries, task_text::relation_subject_query(d.lang, rel));
    }
  }
  for (const auto& q : s.queries) check_query(q);
  return s;
}

std::vector<AtomicInstance> translate_sample(const RawSample& raw, const DatasetSchema& schema,
                                             const TranslateOptions& options) {
  std::vector<AtomicInstance> out;
  switch (raw.task) {
    case TaskKind::CLS:
    case TaskKind::SA:
    case TaskKind::ID:
    case TaskKind::MRC_MC:
    case TaskKind::ET:
    case TaskKind::NLI: {
      const auto& gold = require_gold(raw, AtomicKind::Classification);
      auto inst = base_instance(raw, AtomicKind::Classification, 0);
      inst.input_text = raw.text;
      if (raw.task == TaskKind::ET) {
        if (!raw.mention) throw Error(ErrorCode::MissingField, "ET sample " + raw.id + " has no mention");
        inst.input_text += options.segment_separator + *raw.mention;
      } else if (raw.task == TaskKind::NLI) {
        if (!raw.text2) throw Error(ErrorCode::MissingField, "NLI sample " + raw.id + " has no second sentence");
        inst.input_text += options.segment_separator + *raw.text2;
      }
      inst.candidates = (raw.task == TaskKind::MRC_MC && !raw.options.empty()) ? raw.options : schema.labels;
      inst.gold = gold;
      out.push_back(std::move(inst));
      break;
    }
    case TaskKind::NER:
    case TaskKind::SF:
    case TaskKind::MRC_SE: {
      const auto& gold = require_gold(raw, AtomicKind::Extraction);
      auto inst = base_instance(raw, AtomicKind::Extraction, 0);
      inst.input_text = raw.text;
      if (raw.task == TaskKind::MRC_SE) {
        for (const auto& [q, spans] : gold.extractions) inst.candidates.push_back(q);
      } else {
        inst.candidates = schema.queries;
      }
      inst.gold = gold;
      out.push_back(std::move(inst));
      break;
    }
    case TaskKind::EE: out = translate_event(raw, schema); break;
    case TaskKind::RE: out = translate_relation(raw, schema); break;
  }
  for (const auto& inst : out) inst.validate();
  return out;
}

std::vector<AtomicInstance> translate_samples(const std::vector<RawSample>& samples,
                                              const DatasetDescriptor& descriptor, const TranslateOptions& options) {
  auto schema = build_schema(descriptor);
  std::vector<AtomicInstance> out;
  for (const auto& s : samples) {
    auto part = translate_sample(s, schema, options);
    out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
  }
  return out;
}

}  // namespace atomnlu

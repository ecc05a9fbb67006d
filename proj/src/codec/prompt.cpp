// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <set>

#include "codec/codec.hpp"
#include "util/text.hpp"

namespace atomnlu::codec {

std::string_view to_string(TemplateMode m) {
  return m == TemplateMode::LanguageAgnostic ? "agnostic" : "language-specific";
}

TemplateMode parse_template_mode(std::string_view s) {
  if (s == "agnostic" || s == "language-agnostic") return TemplateMode::LanguageAgnostic;
  if (s == "language-specific" || s == "language_specific" || s == "specific") return TemplateMode::LanguageSpecific;
  throw Error(ErrorCode::InvalidArgument, "unknown template mode '" + std::string(s) + "'");
}

std::string_view candidate_separator(Lang lang) { return lang == Lang::Zh ? "，" : ", "; }

PromptTemplate PromptTemplate::make(TemplateMode mode, Lang lang) {
  PromptTemplate t;
  t.mode = mode;
  t.candidate_separator = std::string(codec::candidate_separator(lang));
  if (mode == TemplateMode::LanguageSpecific && lang == Lang::En) {
    t.input_marker = "Input: ";
    t.cls_marker = "Classify: ";
    t.ext_marker = "Extract: ";
    t.output_marker = "Output:";
  }
  return t;
}

void PromptTemplate::validate() const {
  const std::vector<const std::string*> markers{&input_marker, &cls_marker, &ext_marker, &output_marker};
  std::set<std::string> seen;
  for (const auto* m : markers) {
    if (m->empty()) throw Error(ErrorCode::InvalidConfig, "prompt markers must be non-empty");
    if (!seen.insert(*m).second) throw Error(ErrorCode::InvalidConfig, "prompt markers must be distinct");
  }
  if (candidate_separator.empty() || span_separator.empty())
    throw Error(ErrorCode::InvalidConfig, "separators must be non-empty");
}

std::string render_prompt(const AtomicInstance& instance, const PromptTemplate& tmpl) {
  if (instance.candidates.empty())
    throw Error(ErrorCode::EmptyCandidates, "instance " + instance.id + " has no candidates");
  std::string out;
  out.append(tmpl.input_marker).append(instance.input_text).append(tmpl.line_separator);
  out.append(instance.kind == AtomicKind::Classification ? tmpl.cls_marker : tmpl.ext_marker);
  out.append(util::join(instance.candidates, tmpl.candidate_separator));
  out.append(tmpl.line_separator).append(tmpl.output_marker);
  return out;
}

std::string render_prompt(const AtomicInstance& instance, TemplateMode mode) {
  return render_prompt(instance, PromptTemplate::make(mode, instance.lang));
}

std::string serialize_answer(const AnswerSet& answer, Lang lang, const std::vector<std::string>* query_order,
                             std::string_view span_separator) {
  auto rank = [&](const std::string& q) {
    auto it = std::find(query_order->begin(), query_order->end(), q);
    return static_cast<std::size_t>(it - query_order->begin());
  };
  if (answer.kind == AtomicKind::Classification) {
    if (answer.labels.empty()) return std::string(kNoneSentinel);
    if (!query_order) return util::join(answer.labels, candidate_separator(lang));
    auto labels = answer.labels;
    std::stable_sort(labels.begin(), labels.end(), [&](const auto& a, const auto& b) { return rank(a) < rank(b); });
    return util::join(labels, candidate_separator(lang));
  }
  std::vector<const std::pair<std::string, std::vector<std::string>>*> entries;
  for (const auto& e : answer.extractions)
    if (!e.second.empty()) entries.push_back(&e);
  if (query_order) {
    std::stable_sort(entries.begin(), entries.end(),
                     [&](const auto* a, const auto* b) { return rank(a->first) < rank(b->first); });
  }
  if (entries.empty()) return std::string(kNoneSentinel);
  std::string out;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) out.push_back('\n');
    out.append(entries[i]->first).append(": ").append(util::join(entries[i]->second, span_separator));
  }
  return out;
}

std::string render_gold_completion(const AtomicInstance& instance) {
  return serialize_answer(instance.gold, instance.lang);
}

}  // namespace atomnlu::codec

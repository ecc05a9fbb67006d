// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/types.hpp"

namespace atomnlu::codec {

enum class TemplateMode {
  LanguageAgnostic,  // Chinese markers for every language
  LanguageSpecific,  // markers in the instance language
};

std::string_view to_string(TemplateMode m);  // "agnostic" / "language-specific"
TemplateMode parse_template_mode(std::string_view s);

struct PromptTemplate {
  std::string input_marker = "输入: ";
  std::string cls_marker = "分类: ";
  std::string ext_marker = "抽取: ";
  std::string output_marker = "输出:";
  std::string candidate_separator = ", ";
  std::string span_separator = "\t";
  std::string line_separator = "\n";
  TemplateMode mode = TemplateMode::LanguageAgnostic;

  static PromptTemplate make(TemplateMode mode, Lang lang);

  /// Markers non-empty and mutually distinct. Throws Error(InvalidConfig).
  void validate() const;
};

/// Candidate separator of a language: "，" for zh, ", " for en.
std::string_view candidate_separator(Lang lang);

/// input_marker + input + "\n" + (cls|ext)_marker + candidates + "\n" + output_marker.
/// Throws Error(EmptyCandidates).
std::string render_prompt(const AtomicInstance& instance, const PromptTemplate& tmpl);
std::string render_prompt(const AtomicInstance& instance, TemplateMode mode = TemplateMode::LanguageAgnostic);

inline constexpr std::string_view kNoneSentinel = "None";

/// Serializes an answer in the completion grammar.
///   CLS: labels joined by the candidate separator; "None" when empty.
///   EXT: "query: span1<TAB>span2" per query with spans; "None" when nothing.
/// With query_order set, labels / query lines follow that order (unlisted last).
std::string serialize_answer(const AnswerSet& answer, Lang lang,
                             const std::vector<std::string>* query_order = nullptr,
                             std::string_view span_separator = "\t");

/// Completion a perfect model would produce; extraction lines in gold order.
std::string render_gold_completion(const AtomicInstance& instance);

enum class AnomalyKind {
  UnknownQuery,
  OutOfCandidateLabel,
  DuplicateQueryLine,
  EmptyOutput,
  MalformedLine,
  BackendFailure,
};

std::string_view to_string(AnomalyKind k);

struct Anomaly {
  AnomalyKind kind;
  std::string payload;  // offending line, label or error text
  bool operator==(const Anomaly&) const = default;
};

struct ParsedAnswer {
  AnswerSet answers;
  std::string raw_text;
  std::vector<Anomaly> anomalies;

  bool has(AnomalyKind k) const;
};

/// Never throws. Accepts arbitrary model output; problems become anomalies.
ParsedAnswer parse_response(AtomicKind kind, const std::vector<std::string>& candidates, std::string_view text);

}  // namespace atomnlu::codec

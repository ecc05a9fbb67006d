// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "codec/codec.hpp"
#include "core/types.hpp"

namespace atomnlu::metrics {

/// en: ASCII-lowercased words split on whitespace and ASCII punctuation.
/// zh: one token per non-whitespace code point.
std::vector<std::string> tokenize(std::string_view text, Lang lang);

/// ROUGE-N F1 with clipped n-gram overlap. Both sides without n-grams -> 1,
/// exactly one side without n-grams -> 0. Throws Error(InvalidArgument) unless n is 1 or 2.
double rouge_n(const std::vector<std::string>& pred, const std::vector<std::string>& ref, int n);

/// ROUGE-L F1 from the longest common subsequence, same empty conventions.
double rouge_l(const std::vector<std::string>& pred, const std::vector<std::string>& ref);

struct MicroF1 {
  double f1 = 1.0;
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
};

/// Exact-match Micro-F1 over (gold, pred) pairs. Items are labels (CLS) or
/// (query, span) pairs (EXT), whitespace-trimmed. No items at all -> 1.
/// Throws Error(KindMismatch).
MicroF1 micro_f1(const std::vector<std::pair<AnswerSet, AnswerSet>>& pairs);

struct ScoreBreakdown {
  double micro_f1 = 0;
  double rouge1 = 0;
  double rouge2 = 0;
  double rougeL = 0;
  double rouge_avg = 0;
  double final = 0;  // 100 * (micro_f1 + rouge_avg) / 2
  std::size_t tp = 0;
  std::size_t fp = 0;
  std::size_t fn = 0;
  std::size_t instances = 0;
};

/// Fills rouge_avg and final from the component scores.
ScoreBreakdown combine(const MicroF1& f1, double rouge1, double rouge2, double rougeL, std::size_t instances);

using EvalResult = std::pair<AtomicInstance, codec::ParsedAnswer>;

/// Scores one (dataset, atomic kind). ROUGE compares canonical serializations
/// of prediction and gold (candidate order) per instance and is averaged over
/// instances. Throws Error(EmptyResults) / Error(KindMismatch).
ScoreBreakdown score_dataset(const std::vector<EvalResult>& results);

struct AtomicScore {
  std::string dataset_id;
  TaskKind task = TaskKind::CLS;
  AtomicKind kind = AtomicKind::Classification;
  Lang lang = Lang::En;
  ScoreBreakdown scores;
  std::map<std::string, std::size_t> anomalies;
};

inline constexpr std::string_view kReportColumns[] = {"CLS", "EE", "ID", "MRC", "NER",
                                                      "NLI", "RE", "SF",  "SA",  "ET"};

struct TaskScore {
  std::map<AtomicKind, double> atomic;  // mean final over datasets, per atomic kind
  double score = 0;                     // unweighted mean over atomic kinds
};

struct EvalReport {
  std::vector<AtomicScore> datasets;
  std::map<std::string, TaskScore> tasks;  // keyed by report column
  double all = 0;                          // unweighted mean over present task columns
  std::map<std::string, std::size_t> anomalies;
};

/// Throws Error(EmptyReport).
EvalReport aggregate_report(std::vector<AtomicScore> per_dataset);

/// Column-aligned text table: one row per task column and ALL, then per-dataset rows.
std::string render_table(const EvalReport& report);

}  // namespace atomnlu::metrics

// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "metrics/metrics.hpp"

namespace atomnlu::metrics {

ScoreBreakdown combine(const MicroF1& f1, double rouge1, double rouge2, double rougeL, std::size_t instances) {
  ScoreBreakdown s;
  s.micro_f1 = f1.f1;
  s.tp = f1.tp;
  s.fp = f1.fp;
  s.fn = f1.fn;
  s.rouge1 = rouge1;
  s.rouge2 = rouge2;
  s.rougeL = rougeL;
  s.rouge_avg = (rouge1 + rouge2 + rougeL) / 3.0;
  s.final = 100.0 * (s.micro_f1 + s.rouge_avg) / 2.0;
  s.instances = instances;
  return s;
}

ScoreBreakdown score_dataset(const std::vector<EvalResult>& results) {
  if (results.empty()) throw Error(ErrorCode::EmptyResults, "no results to score");
  const auto& first = results.front().first;
  std::vector<std::pair<AnswerSet, AnswerSet>> pairs;
  pairs.reserve(results.size());
  double r1 = 0, r2 = 0, rl = 0;
  for (const auto& [inst, parsed] : results) {
    if (inst.dataset_id != first.dataset_id || inst.kind != first.kind)
      throw Error(ErrorCode::InvalidArgument, "score_dataset expects one (dataset, atomic kind)");
    if (parsed.answers.kind != inst.kind)
      throw Error(ErrorCode::KindMismatch, "prediction kind differs for " + inst.id);
    pairs.emplace_back(inst.gold, parsed.answers);
    const auto gold_tokens = tokenize(codec::serialize_answer(inst.gold, inst.lang, &inst.candidates), inst.lang);
    const auto pred_tokens =
        tokenize(codec::serialize_answer(parsed.answers, inst.lang, &inst.candidates), inst.lang);
    r1 += rouge_n(pred_tokens, gold_tokens, 1);
    r2 += rouge_n(pred_tokens, gold_tokens, 2);
    rl += rouge_l(pred_tokens, gold_tokens);
  }
  const auto n = static_cast<double>(results.size());
  return combine(micro_f1(pairs), r1 / n, r2 / n, rl / n, results.size());
}

}  // namespace atomnlu::metrics

// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <set>

#include "metrics/metrics.hpp"
#include "util/text.hpp"

namespace atomnlu::metrics {
namespace {

std::set<std::pair<std::string, std::string>> items(const AnswerSet& a) {
  std::set<std::pair<std::string, std::string>> out;
  if (a.kind == AtomicKind::Classification) {
    for (const auto& l : a.labels) out.emplace("", util::trim_copy(l));
    return out;
  }
  for (const auto& [q, spans] : a.extractions)
    for (const auto& s : spans) out.emplace(util::trim_copy(q), util::trim_copy(s));
  return out;
}

}  // namespace

MicroF1 micro_f1(const std::vector<std::pair<AnswerSet, AnswerSet>>& pairs) {
  MicroF1 r;
  for (const auto& [gold, pred] : pairs) {
    if (gold.kind != pred.kind) throw Error(ErrorCode::KindMismatch, "gold and prediction kinds differ");
    const auto g = items(gold), p = items(pred);
    for (const auto& x : p) (g.count(x) ? r.tp : r.fp)++;
    for (const auto& x : g)
      if (!p.count(x)) ++r.fn;
  }
  const auto denom = 2 * r.tp + r.fp + r.fn;
  r.f1 = denom == 0 ? 1.0 : 2.0 * static_cast<double>(r.tp) / static_cast<double>(denom);
  return r;
}

}  // namespace atomnlu::metrics

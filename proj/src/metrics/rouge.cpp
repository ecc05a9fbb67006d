// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>

#include "metrics/metrics.hpp"

namespace atomnlu::metrics {
namespace {

using NGram = std::vector<std::string>;

std::map<NGram, std::size_t> count_ngrams(const std::vector<std::string>& tokens, std::size_t n) {
  std::map<NGram, std::size_t> counts;
  if (tokens.size() < n) return counts;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) ++counts[NGram(tokens.begin() + i, tokens.begin() + i + n)];
  return counts;
}

double f_measure(std::size_t overlap, std::size_t pred_total, std::size_t ref_total) {
  if (pred_total == 0 && ref_total == 0) return 1.0;
  if (pred_total == 0 || ref_total == 0) return 0.0;
  const double p = static_cast<double>(overlap) / static_cast<double>(pred_total);
  const double r = static_cast<double>(overlap) / static_cast<double>(ref_total);
  if (p + r == 0.0) return 0.0;
  return 2.0 * p * r / (p + r);
}

}  // namespace

double rouge_n(const std::vector<std::string>& pred, const std::vector<std::string>& ref, int n) {
  if (n != 1 && n != 2) throw Error(ErrorCode::InvalidArgument, "rouge_n supports n = 1 or 2");
  const auto un = static_cast<std::size_t>(n);
  const auto pc = count_ngrams(pred, un), rc = count_ngrams(ref, un);
  std::size_t overlap = 0;
  for (const auto& [gram, c] : pc)
    if (auto it = rc.find(gram); it != rc.end()) overlap += std::min(c, it->second);
  const std::size_t pred_total = pred.size() >= un ? pred.size() - un + 1 : 0;
  const std::size_t ref_total = ref.size() >= un ? ref.size() - un + 1 : 0;
  return f_measure(overlap, pred_total, ref_total);
}

double rouge_l(const std::vector<std::string>& pred, const std::vector<std::string>& ref) {
  // Two-row LCS table.
  std::vector<std::size_t> prev(ref.size() + 1, 0), cur(ref.size() + 1, 0);
  for (std::size_t i = 1; i <= pred.size(); ++i) {
    for (std::size_t j = 1; j <= ref.size(); ++j)
      cur[j] = pred[i - 1] == ref[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    std::swap(prev, cur);
  }
  return f_measure(prev[ref.size()], pred.size(), ref.size());
}

}  // namespace atomnlu::metrics

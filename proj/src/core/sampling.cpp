// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "core/sampling.hpp"

#include <algorithm>

#include "util/log.hpp"
#include "util/rng.hpp"

namespace atomnlu {

std::vector<AtomicInstance> sample_eval_records(const std::vector<AtomicInstance>& dataset, std::size_t n,
                                                std::uint64_t seed) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "sample size must be at least 1");
  if (dataset.empty()) {
    log::warn("sample_eval_records: empty dataset, nothing to sample");
    return {};
  }
  std::vector<const AtomicInstance*> sorted;
  sorted.reserve(dataset.size());
  for (const auto& inst : dataset) sorted.push_back(&inst);
  std::sort(sorted.begin(), sorted.end(), [](const auto* a, const auto* b) { return a->id < b->id; });

  util::Rng rng(seed);
  auto picks = rng.sample_indices(sorted.size(), std::min(n, sorted.size()));
  std::sort(picks.begin(), picks.end());
  std::vector<AtomicInstance> out;
  out.reserve(picks.size());
  for (auto i : picks) out.push_back(*sorted[i]);
  return out;
}

}  // namespace atomnlu

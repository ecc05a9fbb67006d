// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <numeric>

#include "augment/augment.hpp"

namespace atomnlu::augment {

BalanceResult balance_corpus(const std::vector<AtomicInstance>& instances, const BalanceConfig& cfg, util::Rng& rng) {
  cfg.validate();
  std::vector<std::vector<std::string>> positives(instances.size());
  std::vector<std::size_t> order;
  BalanceResult out;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (cfg.exempt_tasks.count(instances[i].task)) continue;
    positives[i] = instances[i].gold.positives();
    if (positives[i].empty()) continue;
    order.push_back(i);
    for (const auto& label : positives[i]) ++out.retention[{instances[i].dataset_id, label}].before;
  }
  rng.shuffle(order);

  std::vector<bool> dropped(instances.size(), false);
  for (auto i : order) {
    const auto& ds = instances[i].dataset_id;
    bool under_quota = false;
    for (const auto& label : positives[i])
      if (out.retention[{ds, label}].after < cfg.n_balance) under_quota = true;
    if (!under_quota) {
      dropped[i] = true;
      continue;
    }
    for (const auto& label : positives[i]) ++out.retention[{ds, label}].after;
  }
  for (std::size_t i = 0; i < instances.size(); ++i)
    if (!dropped[i]) out.kept.push_back(instances[i]);
  return out;
}

}  // namespace atomnlu::augment

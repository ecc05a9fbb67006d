// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <set>

#include "augment/augment.hpp"

namespace atomnlu::augment {

void AugmentationConfig::validate() const {
  if (k < 1) throw Error(ErrorCode::InvalidConfig, "K must be >= 1");
  if (m_pos < 1) throw Error(ErrorCode::InvalidConfig, "M_pos must be >= 1");
}

void BalanceConfig::validate() const {
  if (n_balance < 1) throw Error(ErrorCode::InvalidConfig, "N_balance must be >= 1");
}

std::vector<std::string> sample_negative_labels(const std::vector<std::string>& positives,
                                                const std::vector<std::string>& universe, std::size_t n_max,
                                                util::Rng& rng) {
  if (n_max == 0) return {};
  const std::set<std::string> excluded(positives.begin(), positives.end());
  std::vector<const std::string*> pool;
  std::set<std::string_view> seen;
  for (const auto& label : universe)
    if (!excluded.count(label) && seen.insert(label).second) pool.push_back(&label);
  const auto n = static_cast<std::size_t>(rng.uniform(1, n_max));
  std::vector<std::string> out;
  if (pool.empty()) return out;
  for (auto i : rng.sample_indices(pool.size(), n)) out.push_back(*pool[i]);
  return out;
}

}  // namespace atomnlu::augment

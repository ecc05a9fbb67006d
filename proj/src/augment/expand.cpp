// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <set>
#include <thread>

#include "augment/augment.hpp"

namespace atomnlu::augment {
namespace {

AnswerSet restrict_gold(const AnswerSet& gold, const std::set<std::string>& keep) {
  if (gold.kind == AtomicKind::Classification) {
    std::vector<std::string> labels;
    for (const auto& l : gold.labels)
      if (keep.count(l)) labels.push_back(l);
    return AnswerSet::classification(std::move(labels));
  }
  Extractions ex;
  for (const auto& e : gold.extractions)
    if (keep.count(e.first)) ex.push_back(e);
  return AnswerSet::extraction(std::move(ex));
}

}  // namespace

Expansion expand_instructions(const AtomicInstance& instance, const std::vector<std::string>& universe,
                              const AugmentationConfig& cfg, util::Rng& rng) {
  cfg.validate();
  Expansion out;
  const auto positives = instance.gold.positives();
  if (positives.empty()) {
    out.no_positives = true;
    out.variants.push_back(instance);
    return out;
  }
  for (std::size_t k = 0; k < cfg.k; ++k) {
    const auto n_pos = static_cast<std::size_t>(rng.uniform(1, cfg.m_pos));
    std::set<std::string> chosen;
    std::vector<std::string> candidates;
    for (auto i : rng.sample_indices(positives.size(), std::min(n_pos, positives.size()))) {
      chosen.insert(positives[i]);
      candidates.push_back(positives[i]);
    }
    auto negatives = sample_negative_labels(positives, universe, cfg.m_neg, rng);
    candidates.insert(candidates.end(), negatives.begin(), negatives.end());
    rng.shuffle(candidates);

    AtomicInstance v = instance;
    v.id = instance.id + "#" + std::to_string(k);
    v.candidates = std::move(candidates);
    v.gold = restrict_gold(instance.gold, chosen);
    out.variants.push_back(std::move(v));
  }
  return out;
}

CorpusExpansion expand_corpus(const std::vector<AtomicInstance>& instances, const UniverseLookup& universes,
                              const AugmentationConfig& cfg, std::size_t threads) {
  cfg.validate();
  const util::Rng root(cfg.seed);
  std::vector<Expansion> parts(instances.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < instances.size(); i = next++) {
      const auto& inst = instances[i];
      auto it = universes.find({inst.dataset_id, inst.kind});
      const std::vector<std::string>& universe = it != universes.end() ? it->second : inst.candidates;
      auto rng = root.derive(inst.id);
      parts[i] = expand_instructions(inst, universe, cfg, rng);
    }
  };
  threads = std::max<std::size_t>(1, std::min(threads, instances.size()));
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  CorpusExpansion out;
  for (auto& p : parts) {
    out.no_positive_count += p.no_positives;
    for (auto& v : p.variants) out.instances.push_back(std::move(v));
  }
  return out;
}

}  // namespace atomnlu::augment

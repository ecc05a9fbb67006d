// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "codec/codec.hpp"
#include "core/types.hpp"
#include "util/rng.hpp"

namespace atomnlu::augment {

struct AugmentationConfig {
  std::size_t k = 3;       // instructions per source instance
  std::size_t m_pos = 11;  // upper bound of the positive-label draw
  std::size_t m_neg = 21;  // upper bound of the negative-label draw
  std::uint64_t seed = 0;

  void validate() const;
};

struct BalanceConfig {
  std::size_t n_balance = 500;
  std::set<TaskKind> exempt_tasks{TaskKind::SA, TaskKind::NLI};

  void validate() const;
};

/// Draws N ~ U{1..n_max} and returns min(N, |universe \ positives|) distinct
/// labels from universe \ positives, uniformly. n_max == 0 yields nothing.
std::vector<std::string> sample_negative_labels(const std::vector<std::string>& positives,
                                                const std::vector<std::string>& universe, std::size_t n_max,
                                                util::Rng& rng);

struct Expansion {
  std::vector<AtomicInstance> variants;
  bool no_positives = false;  // passed through unchanged
};

/// K instruction variants of one instance. Each keeps a random subset of the
/// gold positives (1..min(N_pos, #positives) with N_pos ~ U{1..M_pos}) plus
/// sampled negatives, in shuffled order, with gold restricted to the kept
/// positives. Variant ids are "<id>#<k>".
Expansion expand_instructions(const AtomicInstance& instance, const std::vector<std::string>& universe,
                              const AugmentationConfig& cfg, util::Rng& rng);

struct CorpusExpansion {
  std::vector<AtomicInstance> instances;
  std::size_t no_positive_count = 0;
};

using UniverseLookup = std::map<std::pair<std::string, AtomicKind>, std::vector<std::string>>;

/// Expands every instance with a generator derived from (cfg.seed, instance id),
/// so the output does not depend on parallelism. Runs on up to `threads` workers.
CorpusExpansion expand_corpus(const std::vector<AtomicInstance>& instances, const UniverseLookup& universes,
                              const AugmentationConfig& cfg, std::size_t threads = 1);

struct LabelRetention {
  std::size_t before = 0;
  std::size_t after = 0;
};

struct BalanceResult {
  std::vector<AtomicInstance> kept;  // input order
  std::map<std::pair<std::string, std::string>, LabelRetention> retention;  // (dataset, label)
};

/// Caps instructions per (dataset, positive label) at N_balance. Greedy pass in
/// random order: an instruction is kept iff one of its positive labels is still
/// under quota when visited. Exempt tasks and instructions without positives
/// pass through.
BalanceResult balance_corpus(const std::vector<AtomicInstance>& instances, const BalanceConfig& cfg, util::Rng& rng);

enum class Stage { Pretrain, Finetune };
std::string_view to_string(Stage s);
Stage parse_stage(std::string_view s);

struct TrainingRecord {
  std::string prompt;
  std::string completion;
  std::string dataset_id;
  TaskKind task = TaskKind::CLS;
  AtomicKind kind = AtomicKind::Classification;
  Lang lang = Lang::En;
  Stage stage = Stage::Finetune;
};

/// prompt = render_prompt, completion = render_gold_completion. The prompt /
/// completion boundary is where a trainer stops masking the loss.
std::vector<TrainingRecord> emit_training_records(const std::vector<AtomicInstance>& instances,
                                                  codec::TemplateMode mode, Stage stage);

}  // namespace atomnlu::augment

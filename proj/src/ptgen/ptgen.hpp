// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/types.hpp"

namespace atomnlu::ptgen {

enum class PtKind { ClsBundle, EntityBundle };

std::string_view to_string(PtKind k);  // "cls_bundle" / "entity_bundle"
PtKind parse_pt_kind(std::string_view s);

struct PtGenerationPrompt {
  PtKind kind = PtKind::ClsBundle;
  Lang lang = Lang::En;
  std::string text;
  std::string rendered;
};

/// Generator prompt with the passage substituted verbatim inside quotes.
/// Throws Error(InvalidArgument) on empty text.
PtGenerationPrompt build_pt_prompt(PtKind kind, Lang lang, std::string_view text);

enum class PtFailure {
  TooFewCategories,
  BadSentiment,
  IntentTooLong,
  TooFewTypes,
  NoJsonFound,
  MissingField,
  NoEntities,
  BadLabel,
};

std::string_view to_string(PtFailure f);

struct PtSample {
  std::string id;
  PtKind kind = PtKind::ClsBundle;
  Lang lang = Lang::En;
  std::string text;
  // cls_bundle
  std::vector<std::string> categories;
  std::string sentiment;
  std::string intent;
  // entity_bundle: entity -> types
  std::vector<std::pair<std::string, std::vector<std::string>>> entities;
};

struct PtParseResult {
  std::optional<PtSample> sample;
  std::vector<PtFailure> failures;
  std::string detail;

  bool ok() const { return sample.has_value(); }
};

inline constexpr std::size_t kMinCategories = 5;
inline constexpr std::size_t kMinEntityTypes = 3;

/// Parses a generator response. Never throws: format violations come back as
/// failure codes and the sample is left empty.
///   cls_bundle:    first JSON object; categories split on "/"; sentiment in
///                  {positive, negative, neutral} / {正向, 负向, 中性}; intent of at most two words.
///   entity_bundle: JSON (object or list) or "entity: type1, type2, type3" lines;
///                  every entity needs at least three types.
PtParseResult parse_pt_response(PtKind kind, Lang lang, std::string_view id, std::string_view text,
                                std::string_view response);

struct PtStatsRow {
  Lang lang = Lang::En;
  TaskKind task = TaskKind::CLS;
  std::size_t instances = 0;
  std::size_t tokens = 0;
  std::size_t labels = 0;
};

struct PtCorpusStats {
  std::vector<PtStatsRow> rows;  // en CLS/ET/NER, zh CLS/ET/NER
  std::size_t instances = 0;
  std::size_t tokens = 0;
  std::size_t labels = 0;
};

struct PtCorpus {
  std::vector<RawSample> samples;                 // canonical sample records, gold only
  std::vector<DatasetDescriptor> descriptors;     // one per (lang, task), role pretrain
  std::vector<AtomicInstance> instances;          // gold positives plus sampled negatives
  PtCorpusStats stats;
  std::size_t skipped_mentions = 0;               // entities absent from their passage
};

/// Dataset id of the PT corpus part for (lang, task), e.g. "pt-en-ner".
std::string pt_dataset_id(Lang lang, TaskKind task);

/// Converts parsed samples into canonical samples and atomic instances. Each
/// (lang, task) part gets a universe built from every label it contains;
/// instances then carry their gold positives plus negatives drawn from that
/// universe (at most m_neg, per-instance generator derived from seed and id).
PtCorpus assemble_pt_corpus(const std::vector<PtSample>& samples, std::size_t m_neg, std::uint64_t seed);

std::string render_stats_table(const PtCorpusStats& stats);

}  // namespace atomnlu::ptgen

// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "core/types.hpp"

namespace atomnlu {

struct TranslateOptions {
  /// Joins text and mention (ET) or the two NLI sentences.
  std::string segment_separator = "\t";
};

/// Candidate universes of one dataset.
struct DatasetSchema {
  Lang lang = Lang::En;
  std::vector<std::string> labels;   // classification candidates
  std::vector<std::string> queries;  // extraction candidates
};

DatasetSchema build_schema(const DatasetDescriptor& descriptor);

/// "{dataset_id}/{source_id}/{CLS|EXT}/{ordinal}"
std::string instance_id(std::string_view dataset_id, std::string_view source_id, AtomicKind kind, std::size_t ordinal);

/// Splits one sample into its atomic instances:
///   CLS/SA/ID/MRC_MC/ET/NLI -> 1 classification
///   NER/SF/MRC_SE           -> 1 extraction
///   EE -> 1 classification per trigger + 1 extraction
///   RE -> 1 classification per (subject, object) pair + 1 extraction
/// Throws Error(MissingField) or Error(EmptyCandidates).
std::vector<AtomicInstance> translate_sample(const RawSample& raw, const DatasetSchema& schema,
                                             const TranslateOptions& options = {});

std::vector<AtomicInstance> translate_samples(const std::vector<RawSample>& samples,
                                              const DatasetDescriptor& descriptor,
                                              const TranslateOptions& options = {});

}  // namespace atomnlu

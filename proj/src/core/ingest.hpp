// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "core/types.hpp"

namespace atomnlu {

struct IngestIssue {
  std::size_t line = 0;
  ErrorCode code = ErrorCode::MalformedRecord;
  std::string message;
  std::size_t related_line = 0;  // DuplicateId: line of the first occurrence
};

struct IngestResult {
  std::vector<RawSample> samples;
  std::vector<IngestIssue> issues;
  /// Spans containing a candidate separator. They parse back correctly only
  /// when they share their answer line with another span.
  std::size_t separator_span_warnings = 0;

  bool ok() const { return issues.empty(); }
};

/// Reads canonical sample JSON Lines for one dataset. Invalid lines are
/// reported in issues and skipped; descriptor.label_universe (and event_roles)
/// are extended with everything the valid samples reference.
IngestResult ingest_jsonl(const std::filesystem::path& path, DatasetDescriptor& descriptor);
IngestResult ingest_text(std::string_view content, DatasetDescriptor& descriptor);

/// Every split of a dataset, split name -> samples. Ids must be unique across splits.
struct DatasetIngest {
  std::map<std::string, std::vector<RawSample>> splits;
  std::vector<std::pair<std::string, IngestIssue>> issues;  // (split, issue)
  std::size_t separator_span_warnings = 0;
};
DatasetIngest ingest_dataset(DatasetDescriptor& descriptor);

/// Trims, strips MRC option markers, deduplicates spans, then enforces the
/// sample invariants and the answer-grammar limits. Throws Error.
void normalize_sample(RawSample& sample);

/// Adds the sample's labels / queries / event roles to the descriptor.
void extend_universe(DatasetDescriptor& descriptor, const RawSample& sample);

/// "(A) rubbing it" -> "rubbing it".
std::string strip_option_marker(std::string_view s);

// Grammar limits of the completion format.
void check_label(std::string_view label);
void check_query(std::string_view query);
void check_span(std::string_view span);

}  // namespace atomnlu

// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "core/error.hpp"

namespace atomnlu {

enum class TaskKind { CLS, SA, ID, NLI, ET, MRC_MC, MRC_SE, NER, SF, EE, RE };
enum class AtomicKind { Classification, Extraction };
enum class Lang { En, Zh };
enum class DatasetRole { HeldIn, HeldOut, Pretrain };

inline constexpr TaskKind kAllTasks[] = {TaskKind::CLS, TaskKind::SA,     TaskKind::ID,     TaskKind::NLI,
                                         TaskKind::ET,  TaskKind::MRC_MC, TaskKind::MRC_SE, TaskKind::NER,
                                         TaskKind::SF,  TaskKind::EE,     TaskKind::RE};

std::string_view to_string(TaskKind t);
std::string_view to_string(AtomicKind k);  // "CLS" / "EXT"
std::string_view to_string(Lang l);
std::string_view to_string(DatasetRole r);

// Throw Error(InvalidArgument) on unknown names.
TaskKind parse_task(std::string_view s);
AtomicKind parse_atomic_kind(std::string_view s);
Lang parse_lang(std::string_view s);
DatasetRole parse_role(std::string_view s);

/// Tasks whose gold is a label list.
bool is_label_task(TaskKind t);
/// Tasks whose gold is a query -> spans mapping.
bool is_extraction_task(TaskKind t);

/// Report column a task is aggregated under. MRC_MC and MRC_SE share "MRC".
std::string_view report_column(TaskKind t);

using Extractions = std::vector<std::pair<std::string, std::vector<std::string>>>;

struct AnswerSet {
  AtomicKind kind = AtomicKind::Classification;
  std::vector<std::string> labels;
  Extractions extractions;

  static AnswerSet classification(std::vector<std::string> labels);
  static AnswerSet extraction(Extractions extractions);

  /// nullptr when the query is absent.
  const std::vector<std::string>* spans(std::string_view query) const;

  /// CLS: the labels. EXT: queries with at least one span.
  std::vector<std::string> positives() const;

  bool empty() const;

  /// Checks the no-duplicates invariants.
  void validate() const;

  bool operator==(const AnswerSet&) const = default;
};

/// Equality up to label-set / per-query span-set equality; absent query == empty.
bool equivalent(const AnswerSet& a, const AnswerSet& b);

struct EventArgument {
  std::string role;
  std::string text;
  bool operator==(const EventArgument&) const = default;
};

struct Trigger {
  std::string text;
  std::string event_type;
  std::vector<EventArgument> arguments;
  bool operator==(const Trigger&) const = default;
};

struct Relation {
  std::string subject;
  std::string object;
  std::string relation;
  bool operator==(const Relation&) const = default;
};

struct RawSample {
  std::string id;
  std::string dataset_id;
  TaskKind task = TaskKind::CLS;
  Lang lang = Lang::En;
  std::string text;
  std::optional<std::string> text2;
  std::optional<std::string> mention;
  std::vector<std::string> options;  // MRC_MC answer options, markers stripped
  std::vector<Trigger> triggers;
  std::vector<Relation> relations;
  std::optional<AnswerSet> gold;  // absent for EE / RE, derived during translation

  bool operator==(const RawSample&) const = default;
};

struct AtomicInstance {
  std::string id;
  std::string source_id;
  std::string dataset_id;
  TaskKind task = TaskKind::CLS;
  AtomicKind kind = AtomicKind::Classification;
  Lang lang = Lang::En;
  std::string input_text;
  std::vector<std::string> candidates;
  AnswerSet gold;

  /// Throws Error(EmptyCandidates) or Error(MalformedRecord) when an invariant fails.
  void validate() const;

  bool operator==(const AtomicInstance&) const = default;
};

struct DatasetDescriptor {
  std::string dataset_id;
  TaskKind task = TaskKind::CLS;
  Lang lang = Lang::En;
  DatasetRole role = DatasetRole::HeldIn;
  /// Labels (label tasks), queries (NER/SF/MRC_SE), event types (EE) or relation types (RE).
  std::vector<std::string> label_universe;
  /// EE only: event type -> argument roles.
  std::vector<std::pair<std::string, std::vector<std::string>>> event_roles;
  std::map<std::string, std::string> splits;  // split name -> path
  std::map<std::string, std::size_t> split_sizes;

  bool operator==(const DatasetDescriptor&) const = default;
};

}  // namespace atomnlu

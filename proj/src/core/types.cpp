// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "core/types.hpp"

#include <algorithm>
#include <set>

namespace atomnlu {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MalformedRecord: return "MalformedRecord";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::TaskMismatch: return "TaskMismatch";
    case ErrorCode::MissingField: return "MissingField";
    case ErrorCode::EmptyCandidates: return "EmptyCandidates";
    case ErrorCode::KindMismatch: return "KindMismatch";
    case ErrorCode::EmptyResults: return "EmptyResults";
    case ErrorCode::EmptyReport: return "EmptyReport";
    case ErrorCode::BackendUnavailable: return "BackendUnavailable";
    case ErrorCode::Timeout: return "Timeout";
    case ErrorCode::ProtocolError: return "ProtocolError";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Io: return "Io";
  }
  return "Unknown";
}

std::string_view to_string(TaskKind t) {
  switch (t) {
    case TaskKind::CLS: return "CLS";
    case TaskKind::SA: return "SA";
    case TaskKind::ID: return "ID";
    case TaskKind::NLI: return "NLI";
    case TaskKind::ET: return "ET";
    case TaskKind::MRC_MC: return "MRC_MC";
    case TaskKind::MRC_SE: return "MRC_SE";
    case TaskKind::NER: return "NER";
    case TaskKind::SF: return "SF";
    case TaskKind::EE: return "EE";
    case TaskKind::RE: return "RE";
  }
  return "?";
}

std::string_view to_string(AtomicKind k) { return k == AtomicKind::Classification ? "CLS" : "EXT"; }
std::string_view to_string(Lang l) { return l == Lang::En ? "en" : "zh"; }

std::string_view to_string(DatasetRole r) {
  switch (r) {
    case DatasetRole::HeldIn: return "held_in";
    case DatasetRole::HeldOut: return "held_out";
    case DatasetRole::Pretrain: return "pretrain";
  }
  return "?";
}

TaskKind parse_task(std::string_view s) {
  if (s == "MRC-MC") return TaskKind::MRC_MC;
  if (s == "MRC-SE") return TaskKind::MRC_SE;
  for (auto t : kAllTasks)
    if (to_string(t) == s) return t;
  throw Error(ErrorCode::InvalidArgument, "unknown task kind '" + std::string(s) + "'");
}

AtomicKind parse_atomic_kind(std::string_view s) {
  if (s == "CLS" || s == "Classification") return AtomicKind::Classification;
  if (s == "EXT" || s == "Extraction") return AtomicKind::Extraction;
  throw Error(ErrorCode::InvalidArgument, "unknown atomic kind '" + std::string(s) + "'");
}

Lang parse_lang(std::string_view s) {
  if (s == "en") return Lang::En;
  if (s == "zh") return Lang::Zh;
  throw Error(ErrorCode::InvalidArgument, "unknown language '" + std::string(s) + "'");
}

DatasetRole parse_role(std::string_view s) {
  if (s == "held_in") return DatasetRole::HeldIn;
  if (s == "held_out") return DatasetRole::HeldOut;
  if (s == "pretrain") return DatasetRole::Pretrain;
  throw Error(ErrorCode::InvalidArgument, "unknown dataset role '" + std::string(s) + "'");
}

bool is_label_task(TaskKind t) {
  switch (t) {
    case TaskKind::CLS:
    case TaskKind::SA:
    case TaskKind::ID:
    case TaskKind::NLI:
    case TaskKind::ET:
    case TaskKind::MRC_MC: return true;
    default: return false;
  }
}

bool is_extraction_task(TaskKind t) {
  return t == TaskKind::NER || t == TaskKind::SF || t == TaskKind::MRC_SE;
}

std::string_view report_column(TaskKind t) {
  if (t == TaskKind::MRC_MC || t == TaskKind::MRC_SE) return "MRC";
  return to_string(t);
}

AnswerSet AnswerSet::classification(std::vector<std::string> labels) {
  AnswerSet a;
  a.kind = AtomicKind::Classification;
  a.labels = std::move(labels);
  return a;
}

AnswerSet AnswerSet::extraction(Extractions extractions) {
  AnswerSet a;
  a.kind = AtomicKind::Extraction;
  a.extractions = std::move(extractions);
  return a;
}

const std::vector<std::string>* AnswerSet::spans(std::string_view query) const {
  for (const auto& [q, s] : extractions)
    if (q == query) return &s;
  return nullptr;
}

std::vector<std::string> AnswerSet::positives() const {
  if (kind == AtomicKind::Classification) return labels;
  std::vector<std::string> out;
  for (const auto& [q, s] : extractions)
    if (!s.empty()) out.push_back(q);
  return out;
}

bool AnswerSet::empty() const {
  if (kind == AtomicKind::Classification) return labels.empty();
  return std::all_of(extractions.begin(), extractions.end(), [](const auto& e) { return e.second.empty(); });
}

void AnswerSet::validate() const {
  auto check_unique = [](const std::vector<std::string>& v, const char* what) {
    std::set<std::string_view> seen;
    for (const auto& x : v)
      if (!seen.insert(x).second)
        throw Error(ErrorCode::MalformedRecord, std::string("duplicate ") + what + " '" + x + "'");
  };
  if (kind == AtomicKind::Classification) {
    if (!extractions.empty()) throw Error(ErrorCode::MalformedRecord, "classification answer carries extractions");
    check_unique(labels, "label");
    return;
  }
  if (!labels.empty()) throw Error(ErrorCode::MalformedRecord, "extraction answer carries labels");
  std::set<std::string_view> queries;
  for (const auto& [q, s] : extractions) {
    if (!queries.insert(q).second) throw Error(ErrorCode::MalformedRecord, "duplicate query '" + q + "'");
    check_unique(s, "span");
  }
}

bool equivalent(const AnswerSet& a, const AnswerSet& b) {
  if (a.kind != b.kind) return false;
  if (a.kind == AtomicKind::Classification)
    return std::set<std::string>(a.labels.begin(), a.labels.end()) ==
           std::set<std::string>(b.labels.begin(), b.labels.end());
  std::map<std::string, std::set<std::string>> ma, mb;
  for (const auto& [q, s] : a.extractions)
    if (!s.empty()) ma[q].insert(s.begin(), s.end());
  for (const auto& [q, s] : b.extractions)
    if (!s.empty()) mb[q].insert(s.begin(), s.end());
  return ma == mb;
}

void AtomicInstance::validate() const {
  if (candidates.empty()) throw Error(ErrorCode::EmptyCandidates, "instance " + id + " has no candidates");
  std::set<std::string_view> cand;
  for (const auto& c : candidates) {
    if (c.empty()) throw Error(ErrorCode::MalformedRecord, "instance " + id + " has an empty candidate");
    if (!cand.insert(c).second)
      throw Error(ErrorCode::MalformedRecord, "instance " + id + " has duplicate candidate '" + c + "'");
  }
  if (gold.kind != kind) throw Error(ErrorCode::KindMismatch, "instance " + id + " gold kind differs");
  gold.validate();
  if (kind == AtomicKind::Classification) {
    for (const auto& l : gold.labels)
      if (!cand.count(l))
        throw Error(ErrorCode::MalformedRecord, "instance " + id + " gold label '" + l + "' not in candidates");
  } else {
    for (const auto& [q, s] : gold.extractions)
      if (!cand.count(q))
        throw Error(ErrorCode::MalformedRecord, "instance " + id + " gold query '" + q + "' not in candidates");
  }
}

}  // namespace atomnlu

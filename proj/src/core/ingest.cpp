// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "core/ingest.hpp"

#include <algorithm>
#include <map>

#include "core/json_io.hpp"
#include "util/text.hpp"

namespace atomnlu {
namespace {

constexpr std::string_view kNone = "None";

void require_clean(std::string_view s, std::string_view what) {
  if (s.empty()) throw Error(ErrorCode::MalformedRecord, std::string(what) + " is empty");
  if (util::contains(s, "\n")) throw Error(ErrorCode::MalformedRecord, std::string(what) + " contains a newline");
  if (s == kNone) throw Error(ErrorCode::MalformedRecord, std::string(what) + " may not be the reserved word None");
}

void trim_all(std::vector<std::string>& v) {
  for (auto& x : v) x = util::trim_copy(x);
}

std::vector<std::string> dedupe(const std::vector<std::string>& v) {
  std::vector<std::string> out;
  util::append_unique(out, v);
  return out;
}

bool has_separator(std::string_view s) { return util::contains(s, ", ") || util::contains(s, "，"); }

std::size_t count_separator_spans(const RawSample& s) {
  std::size_t n = 0;
  if (s.gold && s.gold->kind == AtomicKind::Extraction)
    for (const auto& [q, spans] : s.gold->extractions)
      n += static_cast<std::size_t>(std::count_if(spans.begin(), spans.end(), has_separator));
  for (const auto& t : s.triggers) {
    n += has_separator(t.text);
    for (const auto& a : t.arguments) n += has_separator(a.text);
  }
  for (const auto& r : s.relations) n += has_separator(r.subject) + has_separator(r.object);
  return n;
}

}  // namespace

std::string strip_option_marker(std::string_view s) {
  auto t = util::trim(s);
  // ASCII "(X) " or full-width "（X）"
  if (t.size() >= 4 && t[0] == '(' && t[2] == ')' && std::isalnum(static_cast<unsigned char>(t[1])) && t[3] == ' ')
    return util::trim_copy(t.substr(4));
  constexpr std::string_view kOpen = "（", kClose = "）";
  if (t.substr(0, kOpen.size()) == kOpen && t.size() > kOpen.size() + 1 + kClose.size() &&
      std::isalnum(static_cast<unsigned char>(t[kOpen.size()])) &&
      t.substr(kOpen.size() + 1, kClose.size()) == kClose)
    return util::trim_copy(t.substr(kOpen.size() + 1 + kClose.size()));
  return std::string(t);
}

void check_label(std::string_view label) {
  require_clean(label, "label");
  if (has_separator(label))
    throw Error(ErrorCode::MalformedRecord, "label '" + std::string(label) + "' contains a candidate separator");
}

void check_query(std::string_view query) {
  require_clean(query, "query");
  if (util::contains(query, ": ") || util::contains(query, "："))
    throw Error(ErrorCode::MalformedRecord, "query '" + std::string(query) + "' contains a colon separator");
}

void check_span(std::string_view span) {
  require_clean(span, "span");
  if (util::contains(span, "\t")) throw Error(ErrorCode::MalformedRecord, "span contains a tab");
}

void normalize_sample(RawSample& s) {
  if (s.id.empty()) throw Error(ErrorCode::MalformedRecord, "id is empty");
  if (util::trim(s.text).empty()) throw Error(ErrorCode::MalformedRecord, "text is empty");
  for (auto* field : {&s.id, &s.dataset_id, &s.text})
    if (!util::is_valid_utf8(*field)) throw Error(ErrorCode::MalformedRecord, "invalid UTF-8");

  if (s.task == TaskKind::NLI && !s.text2) throw Error(ErrorCode::MissingField, "NLI sample needs text2");
  if (s.task != TaskKind::NLI && s.text2) throw Error(ErrorCode::MalformedRecord, "text2 is only valid for NLI");
  if (s.task == TaskKind::ET && !s.mention) throw Error(ErrorCode::MissingField, "ET sample needs mention");
  if (s.task != TaskKind::ET && s.mention) throw Error(ErrorCode::MalformedRecord, "mention is only valid for ET");
  if (s.text2 && util::trim(*s.text2).empty()) throw Error(ErrorCode::MissingField, "text2 is empty");
  if (s.mention && util::trim(*s.mention).empty()) throw Error(ErrorCode::MissingField, "mention is empty");
  if (!s.options.empty() && s.task != TaskKind::MRC_MC)
    throw Error(ErrorCode::MalformedRecord, "options are only valid for MRC_MC");
  if (!s.triggers.empty() && s.task != TaskKind::EE)
    throw Error(ErrorCode::MalformedRecord, "triggers are only valid for EE");
  if (!s.relations.empty() && s.task != TaskKind::RE)
    throw Error(ErrorCode::MalformedRecord, "relations are only valid for RE");

  if (is_label_task(s.task)) {
    if (!s.gold || s.gold->kind != AtomicKind::Classification)
      throw Error(ErrorCode::MissingField, std::string(to_string(s.task)) + " sample needs gold.labels");
    auto& labels = s.gold->labels;
    trim_all(labels);
    if (s.task == TaskKind::MRC_MC) {
      for (auto& l : labels) l = strip_option_marker(l);
      for (auto& o : s.options) o = strip_option_marker(o);
      s.options = dedupe(s.options);
      for (const auto& o : s.options) check_label(o);
      for (const auto& l : labels)
        if (!s.options.empty() && std::find(s.options.begin(), s.options.end(), l) == s.options.end())
          throw Error(ErrorCode::MalformedRecord, "gold option '" + l + "' is not among the options");
    }
    labels = dedupe(labels);
    for (const auto& l : labels) check_label(l);
  } else if (is_extraction_task(s.task)) {
    if (!s.gold || s.gold->kind != AtomicKind::Extraction)
      throw Error(ErrorCode::MissingField, std::string(to_string(s.task)) + " sample needs gold.extractions");
    Extractions merged;
    for (auto& [q, spans] : s.gold->extractions) {
      auto query = util::trim_copy(q);
      check_query(query);
      trim_all(spans);
      for (const auto& sp : spans) check_span(sp);
      auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& e) { return e.first == query; });
      if (it == merged.end())
        merged.emplace_back(query, dedupe(spans));
      else
        util::append_unique(it->second, spans);
    }
    s.gold->extractions = std::move(merged);
  } else {
    if (s.gold) throw Error(ErrorCode::MalformedRecord, "EE/RE gold is derived from triggers/relations");
    for (auto& t : s.triggers) {
      t.text = util::trim_copy(t.text);
      t.event_type = util::trim_copy(t.event_type);
      check_span(t.text);
      check_label(t.event_type);
      for (auto& a : t.arguments) {
        a.role = util::trim_copy(a.role);
        a.text = util::trim_copy(a.text);
        check_label(a.role);
        check_span(a.text);
      }
    }
    for (auto& r : s.relations) {
      r.subject = util::trim_copy(r.subject);
      r.object = util::trim_copy(r.object);
      r.relation = util::trim_copy(r.relation);
      check_span(r.subject);
      check_span(r.object);
      check_label(r.relation);
    }
  }
}

void extend_universe(DatasetDescriptor& d, const RawSample& s) {
  if (s.gold && s.gold->kind == AtomicKind::Classification) {
    util::append_unique(d.label_universe, s.options);
    util::append_unique(d.label_universe, s.gold->labels);
  } else if (s.gold) {
    for (const auto& [q, spans] : s.gold->extractions) util::append_unique(d.label_universe, q);
  }
  for (const auto& t : s.triggers) {
    util::append_unique(d.label_universe, t.event_type);
    auto it = std::find_if(d.event_roles.begin(), d.event_roles.end(),
                           [&](const auto& e) { return e.first == t.event_type; });
    if (it == d.event_roles.end()) {
      d.event_roles.emplace_back(t.event_type, std::vector<std::string>{});
      it = std::prev(d.event_roles.end());
    }
    for (const auto& a : t.arguments) util::append_unique(it->second, a.role);
  }
  for (const auto& r : s.relations) util::append_unique(d.label_universe, r.relation);
}

IngestResult ingest_text(std::string_view content, DatasetDescriptor& descriptor) {
  IngestResult result;
  std::map<std::string, std::size_t> seen;
  std::size_t line_no = 0;
  for (const auto& line : util::split_lines(content)) {
    ++line_no;
    if (util::trim(line).empty()) continue;
    try {
      RawSample s;
      try {
        s = raw_sample_from_json(Json::parse(line));
      } catch (const Json::exception& e) {
        throw Error(ErrorCode::MalformedRecord, std::string("invalid JSON: ") + e.what());
      }
      if (s.task != descriptor.task)
        throw Error(ErrorCode::TaskMismatch, "record task " + std::string(to_string(s.task)) + " but dataset '" +
                                                 descriptor.dataset_id + "' is " +
                                                 std::string(to_string(descriptor.task)));
      if (s.dataset_id != descriptor.dataset_id)
        throw Error(ErrorCode::MalformedRecord,
                    "record dataset '" + s.dataset_id + "' but file belongs to '" + descriptor.dataset_id + "'");
      if (s.lang != descriptor.lang) throw Error(ErrorCode::MalformedRecord, "record language differs from dataset");
      normalize_sample(s);
      if (auto it = seen.find(s.id); it != seen.end()) {
        result.issues.push_back({line_no, ErrorCode::DuplicateId,
                                 "duplicate id '" + s.id + "' (lines " + std::to_string(it->second) + " and " +
                                     std::to_string(line_no) + ")",
                                 it->second});
        continue;
      }
      seen.emplace(s.id, line_no);
      result.separator_span_warnings += count_separator_spans(s);
      extend_universe(descriptor, s);
      result.samples.push_back(std::move(s));
    } catch (const Error& e) {
      result.issues.push_back({line_no, e.code(), e.what(), 0});
    }
  }
  return result;
}

IngestResult ingest_jsonl(const std::filesystem::path& path, DatasetDescriptor& descriptor) {
  return ingest_text(read_file(path), descriptor);
}

DatasetIngest ingest_dataset(DatasetDescriptor& descriptor) {
  for (const auto& l : descriptor.label_universe) {
    if (is_extraction_task(descriptor.task))
      check_query(l);
    else
      check_label(l);
  }
  DatasetIngest out;
  std::map<std::string, std::pair<std::string, std::size_t>> owner;  // id -> (split, line)
  for (const auto& [split, path] : descriptor.splits) {
    auto r = ingest_jsonl(path, descriptor);
    for (auto& issue : r.issues) out.issues.emplace_back(split, std::move(issue));
    out.separator_span_warnings += r.separator_span_warnings;
    std::vector<RawSample> kept;
    for (auto& s : r.samples) {
      auto [it, inserted] = owner.emplace(s.id, std::make_pair(split, std::size_t{0}));
      if (!inserted) {
        out.issues.emplace_back(split, IngestIssue{0, ErrorCode::DuplicateId,
                                                   "id '" + s.id + "' also appears in split '" + it->second.first + "'",
                                                   0});
        continue;
      }
      kept.push_back(std::move(s));
    }
    descriptor.split_sizes[split] = kept.size();
    out.splits[split] = std::move(kept);
  }
  return out;
}

}  // namespace atomnlu

// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <set>

#include "codec/codec.hpp"
#include "util/text.hpp"

namespace atomnlu::codec {
namespace {

const std::vector<std::string_view> kCandidateSeparators{"，", ", "};

std::vector<std::string> clean_pieces(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& p : raw) {
    auto t = util::trim(p);
    if (!t.empty()) util::append_unique(out, std::string(t));
  }
  return out;
}

// Position and width of the query/answer separator, or npos.
std::pair<std::size_t, std::size_t> find_colon(std::string_view line) {
  constexpr std::string_view kAscii = ": ", kWide = "：";
  auto a = line.find(kAscii), w = line.find(kWide);
  if (a == std::string_view::npos && w == std::string_view::npos) {
    if (!line.empty() && line.back() == ':') return {line.size() - 1, 1};
    return {std::string_view::npos, 0};
  }
  if (a < w) return {a, kAscii.size()};
  return {w, kWide.size()};
}

void parse_classification(const std::vector<std::string>& candidates, const std::vector<std::string>& lines,
                          ParsedAnswer& out) {
  bool first = true;
  for (const auto& raw_line : lines) {
    auto line = util::trim(raw_line);
    if (line.empty()) continue;
    if (!first) {
      out.anomalies.push_back({AnomalyKind::MalformedLine, std::string(line)});
      continue;
    }
    first = false;
    if (line == kNoneSentinel) continue;
    for (auto& label : clean_pieces(util::split_any(line, kCandidateSeparators))) {
      if (std::find(candidates.begin(), candidates.end(), label) == candidates.end())
        out.anomalies.push_back({AnomalyKind::OutOfCandidateLabel, label});
      out.answers.labels.push_back(std::move(label));
    }
  }
}

void parse_extraction(const std::vector<std::string>& candidates, const std::vector<std::string>& lines,
                      ParsedAnswer& out) {
  auto& ex = out.answers.extractions;
  for (const auto& raw_line : lines) {
    auto line = util::trim(raw_line);
    if (line.empty() || line == kNoneSentinel) continue;
    auto [pos, width] = find_colon(line);
    if (pos == std::string_view::npos) {
      out.anomalies.push_back({AnomalyKind::MalformedLine, std::string(line)});
      continue;
    }
    std::string query = util::trim_copy(line.substr(0, pos));
    auto value = util::trim(line.substr(pos + width));
    if (std::find(candidates.begin(), candidates.end(), query) == candidates.end()) {
      out.anomalies.push_back({AnomalyKind::UnknownQuery, std::string(line)});
      continue;
    }
    std::vector<std::string> spans;
    if (!value.empty() && value != kNoneSentinel) {
      spans = util::contains(value, "\t") ? clean_pieces(util::split(value, "\t"))
                                          : clean_pieces(util::split_any(value, kCandidateSeparators));
    }
    auto it = std::find_if(ex.begin(), ex.end(), [&](const auto& e) { return e.first == query; });
    if (it == ex.end()) {
      ex.emplace_back(std::move(query), std::move(spans));
    } else {
      out.anomalies.push_back({AnomalyKind::DuplicateQueryLine, std::string(line)});
      util::append_unique(it->second, spans);
    }
  }
}

}  // namespace

std::string_view to_string(AnomalyKind k) {
  switch (k) {
    case AnomalyKind::UnknownQuery: return "UnknownQuery";
    case AnomalyKind::OutOfCandidateLabel: return "OutOfCandidateLabel";
    case AnomalyKind::DuplicateQueryLine: return "DuplicateQueryLine";
    case AnomalyKind::EmptyOutput: return "EmptyOutput";
    case AnomalyKind::MalformedLine: return "MalformedLine";
    case AnomalyKind::BackendFailure: return "BackendFailure";
  }
  return "?";
}

bool ParsedAnswer::has(AnomalyKind k) const {
  return std::any_of(anomalies.begin(), anomalies.end(), [k](const Anomaly& a) { return a.kind == k; });
}

ParsedAnswer parse_response(AtomicKind kind, const std::vector<std::string>& candidates, std::string_view text) {
  ParsedAnswer out;
  out.raw_text = std::string(text);
  out.answers.kind = kind;
  if (util::trim(text).empty()) {
    out.anomalies.push_back({AnomalyKind::EmptyOutput, ""});
    return out;
  }
  auto lines = util::split_lines(text);
  if (kind == AtomicKind::Classification)
    parse_classification(candidates, lines, out);
  else
    parse_extraction(candidates, lines, out);
  return out;
}

}  // namespace atomnlu::codec

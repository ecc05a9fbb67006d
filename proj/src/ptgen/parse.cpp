// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <json.hpp>

#include <algorithm>
#include <set>

#include "core/ingest.hpp"
#include "ptgen/ptgen.hpp"
#include "util/text.hpp"

namespace atomnlu::ptgen {
namespace {

using Json = nlohmann::ordered_json;

std::string normalize_key(std::string_view key) {
  std::string k = util::ascii_lower(util::trim(key));
  std::replace(k.begin(), k.end(), '_', ' ');
  std::replace(k.begin(), k.end(), '-', ' ');
  return k;
}

bool key_in(std::string_view key, std::initializer_list<std::string_view> aliases) {
  const std::string k = normalize_key(key);
  return std::any_of(aliases.begin(), aliases.end(), [&](std::string_view a) { return k == a; });
}

const std::initializer_list<std::string_view> kCategoryKeys{
    "text classification", "classification", "categories", "category", "classes", "topics", "文本分类", "类别", "分类"};
const std::initializer_list<std::string_view> kSentimentKeys{"sentiment analysis", "sentiment", "情感分析", "情感",
                                                              "情感分类"};
const std::initializer_list<std::string_view> kIntentKeys{"intent detection", "intent", "intention", "意图识别",
                                                           "意图"};
const std::initializer_list<std::string_view> kEntityKeys{"entity", "name", "mention", "实体", "实体名称"};
const std::initializer_list<std::string_view> kTypeKeys{"types", "type", "entity types", "entity type", "labels",
                                                         "类型", "实体类型"};
const std::initializer_list<std::string_view> kEntityListKeys{"entities", "entity list", "实体", "实体列表"};

// Every balanced {...} or [...] candidate starting at an opening bracket,
// scanning strings so brackets inside them do not count.
std::optional<Json> first_json(std::string_view s, char open) {
  const char close = open == '{' ? '}' : ']';
  for (std::size_t start = s.find(open); start != std::string_view::npos; start = s.find(open, start + 1)) {
    int depth = 0;
    bool in_str = false, esc = false;
    for (std::size_t i = start; i < s.size(); ++i) {
      char c = s[i];
      if (in_str) {
        if (esc) esc = false;
        else if (c == '\\') esc = true;
        else if (c == '"') in_str = false;
        continue;
      }
      if (c == '"') in_str = true;
      else if (c == '{' || c == '[') ++depth;
      else if (c == '}' || c == ']') {
        if (--depth == 0) {
          if (c != close) break;
          auto parsed = Json::parse(s.substr(start, i - start + 1), nullptr, false);
          if (!parsed.is_discarded()) return parsed;
          break;
        }
      }
    }
  }
  return std::nullopt;
}

std::vector<std::string> clean_list(const std::vector<std::string>& raw) {
  std::vector<std::string> out;
  for (const auto& r : raw) {
    auto t = util::trim_copy(r);
    if (!t.empty()) util::append_unique(out, t);
  }
  return out;
}

std::vector<std::string> split_types(std::string_view s) {
  return clean_list(util::split_any(s, {",", "，", "、", "/", ";", "；"}));
}

// Strings or arrays of strings; each string may itself carry separators.
std::optional<std::vector<std::string>> string_list(const Json& v, bool types) {
  std::vector<std::string> raw;
  auto add = [&](const std::string& s) {
    auto parts = types ? split_types(s) : clean_list(util::split(s, "/"));
    raw.insert(raw.end(), parts.begin(), parts.end());
  };
  if (v.is_string()) {
    add(v.get<std::string>());
  } else if (v.is_array()) {
    for (const auto& e : v) {
      if (!e.is_string()) return std::nullopt;
      add(e.get<std::string>());
    }
  } else {
    return std::nullopt;
  }
  return clean_list(raw);
}

bool valid_label(std::string_view s) {
  try {
    check_label(s);
    check_span(s);
    return true;
  } catch (const Error&) {
    return false;
  }
}

bool valid_query(std::string_view s) {
  try {
    check_query(s);
    return true;
  } catch (const Error&) {
    return false;
  }
}

std::optional<std::string> normalize_sentiment(std::string_view s, Lang lang) {
  const std::string v = util::ascii_lower(util::trim(s));
  static const std::set<std::string> en{"positive", "negative", "neutral"};
  static const std::set<std::string> zh{"正向", "负向", "中性"};
  if ((lang == Lang::En ? en : zh).count(v)) return v;
  return std::nullopt;
}

bool intent_ok(std::string_view s, Lang lang) {
  const auto t = util::trim(s);
  if (lang == Lang::En) return util::split_any(t, {" ", "\t"}).size() <= 2;
  std::size_t words = 0;
  for (const auto& w : util::split_any(t, {" ", "\t", "、", "，", "/"}))
    if (!util::trim(w).empty()) ++words;
  return words <= 2 && util::utf8_codepoints(t).size() <= 8;
}

void parse_cls(PtParseResult& r, PtSample& sample, std::string_view response) {
  auto obj = first_json(response, '{');
  if (!obj) {
    r.failures.push_back(PtFailure::NoJsonFound);
    r.detail = "no JSON object found";
    return;
  }
  const Json* cats = nullptr;
  const Json* sent = nullptr;
  const Json* intent = nullptr;
  for (auto it = obj->begin(); it != obj->end(); ++it) {
    if (!cats && key_in(it.key(), kCategoryKeys)) cats = &it.value();
    else if (!sent && key_in(it.key(), kSentimentKeys)) sent = &it.value();
    else if (!intent && key_in(it.key(), kIntentKeys)) intent = &it.value();
  }
  if (!cats || !sent || !intent) {
    r.failures.push_back(PtFailure::MissingField);
    r.detail = "response lacks classification, sentiment or intent";
    return;
  }

  auto fail = [&](PtFailure f, const std::string& why) {
    r.failures.push_back(f);
    r.detail += (r.detail.empty() ? "" : "; ") + why;
  };
  auto list = string_list(*cats, false);
  if (!list || list->size() < kMinCategories)
    fail(PtFailure::TooFewCategories, std::to_string(list ? list->size() : 0) + " distinct categories");
  else if (!std::all_of(list->begin(), list->end(), [](const auto& c) { return valid_label(c); }))
    fail(PtFailure::BadLabel, "a category breaks the answer grammar");
  else sample.categories = *list;

  std::optional<std::string> s;
  if (sent->is_string()) s = normalize_sentiment(sent->get<std::string>(), sample.lang);
  if (!s) fail(PtFailure::BadSentiment, "sentiment " + sent->dump() + " is not allowed");
  else sample.sentiment = *s;

  if (!intent->is_string() || util::trim(intent->get<std::string>()).empty())
    fail(PtFailure::MissingField, "intent is empty");
  else if (!intent_ok(intent->get<std::string>(), sample.lang))
    fail(PtFailure::IntentTooLong, "intent '" + intent->get<std::string>() + "' is too long");
  else if (!valid_label(util::trim(intent->get<std::string>())))
    fail(PtFailure::BadLabel, "intent breaks the answer grammar");
  else
    sample.intent = util::trim_copy(intent->get<std::string>());
}

using Entities = std::vector<std::pair<std::string, std::vector<std::string>>>;

// {"entities": [...]}, [{"entity": e, "types": [...]}, ...] or {"e": [...], ...}.
std::optional<Entities> entities_from_json(const Json& j) {
  Entities out;
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it)
      if (key_in(it.key(), kEntityListKeys) && (it.value().is_array() || it.value().is_object()) &&
          !it.value().empty() && (it.value().is_object() || it.value().front().is_object()))
        return entities_from_json(it.value());
    for (auto it = j.begin(); it != j.end(); ++it) {
      auto types = string_list(it.value(), true);
      if (!types) return std::nullopt;
      out.emplace_back(util::trim_copy(it.key()), *types);
    }
    return out;
  }
  if (j.is_array()) {
    for (const auto& e : j) {
      if (!e.is_object()) return std::nullopt;
      const Json* name = nullptr;
      const Json* types = nullptr;
      for (auto it = e.begin(); it != e.end(); ++it) {
        if (!name && key_in(it.key(), kEntityKeys)) name = &it.value();
        else if (!types && key_in(it.key(), kTypeKeys)) types = &it.value();
      }
      if (!name || !name->is_string() || !types) return std::nullopt;
      auto list = string_list(*types, true);
      if (!list) return std::nullopt;
      out.emplace_back(util::trim_copy(name->get<std::string>()), *list);
    }
    return out;
  }
  return std::nullopt;
}

Entities entities_from_lines(std::string_view response) {
  Entities out;
  for (const auto& raw : util::split_lines(response)) {
    auto line = util::trim(raw);
    if (line.starts_with("- ") || line.starts_with("* ")) line = util::trim(line.substr(2));
    std::size_t cut = std::string_view::npos, width = 0;
    for (std::string_view sep : {std::string_view(": "), std::string_view("："), std::string_view(":")}) {
      auto p = line.find(sep);
      if (p != std::string_view::npos && p < cut) {
        cut = p;
        width = sep.size();
      }
    }
    if (cut == std::string_view::npos || cut == 0) continue;
    out.emplace_back(util::trim_copy(line.substr(0, cut)), split_types(line.substr(cut + width)));
  }
  return out;
}

void parse_entities(PtParseResult& r, PtSample& sample, std::string_view response) {
  std::optional<Entities> found;
  const auto obj_pos = response.find('{');
  const auto arr_pos = response.find('[');
  if (arr_pos < obj_pos) {
    if (auto j = first_json(response, '[')) found = entities_from_json(*j);
  }
  if (!found) {
    if (auto j = first_json(response, '{')) found = entities_from_json(*j);
  }
  if (!found) found = entities_from_lines(response);

  Entities merged;
  for (auto& [name, types] : *found) {
    if (name.empty()) continue;
    auto it = std::find_if(merged.begin(), merged.end(), [&](const auto& e) { return e.first == name; });
    if (it == merged.end()) merged.emplace_back(name, types);
    else util::append_unique(it->second, types);
  }
  if (merged.empty()) {
    r.failures.push_back(PtFailure::NoEntities);
    r.detail = "no entities found";
    return;
  }
  for (const auto& [name, types] : merged) {
    if (types.size() < kMinEntityTypes) {
      r.failures.push_back(PtFailure::TooFewTypes);
      r.detail = "entity '" + name + "' has " + std::to_string(types.size()) + " types";
      return;
    }
    if (!valid_label(name) ||
        !std::all_of(types.begin(), types.end(), [](const auto& t) { return valid_label(t) && valid_query(t); })) {
      r.failures.push_back(PtFailure::BadLabel);
      r.detail = "entity '" + name + "' or one of its types breaks the answer grammar";
      return;
    }
  }
  sample.entities = std::move(merged);
}

}  // namespace

std::string_view to_string(PtFailure f) {
  switch (f) {
    case PtFailure::TooFewCategories: return "TooFewCategories";
    case PtFailure::BadSentiment: return "BadSentiment";
    case PtFailure::IntentTooLong: return "IntentTooLong";
    case PtFailure::TooFewTypes: return "TooFewTypes";
    case PtFailure::NoJsonFound: return "NoJsonFound";
    case PtFailure::MissingField: return "MissingField";
    case PtFailure::NoEntities: return "NoEntities";
    case PtFailure::BadLabel: return "BadLabel";
  }
  return "Unknown";
}

PtParseResult parse_pt_response(PtKind kind, Lang lang, std::string_view id, std::string_view text,
                                std::string_view response) {
  PtParseResult r;
  PtSample sample;
  sample.id = std::string(id);
  sample.kind = kind;
  sample.lang = lang;
  sample.text = util::trim_copy(text);
  if (sample.text.empty() || sample.id.empty()) {
    r.failures.push_back(PtFailure::MissingField);
    r.detail = "record needs an id and a passage";
    return r;
  }
  if (kind == PtKind::ClsBundle) parse_cls(r, sample, response);
  else parse_entities(r, sample, response);
  if (r.failures.empty()) r.sample = std::move(sample);
  return r;
}

}  // namespace atomnlu::ptgen

// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "core/json_io.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "util/text.hpp"

namespace atomnlu {
namespace {

const Json& require(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) throw Error(ErrorCode::MissingField, std::string("missing key '") + key + "'");
  return *it;
}

std::string require_string(const Json& j, const char* key) {
  const auto& v = require(j, key);
  if (!v.is_string()) throw Error(ErrorCode::MalformedRecord, std::string("key '") + key + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw Error(ErrorCode::MalformedRecord, std::string("key '") + key + "' must be a string");
  return it->get<std::string>();
}

std::vector<std::string> string_list(const Json& v, const char* what) {
  if (!v.is_array()) throw Error(ErrorCode::MalformedRecord, std::string(what) + " must be an array");
  std::vector<std::string> out;
  for (const auto& x : v) {
    if (!x.is_string()) throw Error(ErrorCode::MalformedRecord, std::string(what) + " entries must be strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

Trigger trigger_from_json(const Json& v) {
  Trigger t;
  if (v.is_array()) {
    if (v.size() != 2 || !v[0].is_string() || !v[1].is_string())
      throw Error(ErrorCode::MalformedRecord, "trigger arrays must be [trigger_text, event_type]");
    t.text = v[0].get<std::string>();
    t.event_type = v[1].get<std::string>();
    return t;
  }
  if (!v.is_object()) throw Error(ErrorCode::MalformedRecord, "trigger must be an object or array");
  t.text = require_string(v, "trigger");
  t.event_type = require_string(v, "event_type");
  if (auto it = v.find("arguments"); it != v.end()) {
    if (!it->is_array()) throw Error(ErrorCode::MalformedRecord, "arguments must be an array");
    for (const auto& a : *it) {
      if (a.is_array() && a.size() == 2 && a[0].is_string() && a[1].is_string())
        t.arguments.push_back({a[0].get<std::string>(), a[1].get<std::string>()});
      else if (a.is_object())
        t.arguments.push_back({require_string(a, "role"), require_string(a, "text")});
      else
        throw Error(ErrorCode::MalformedRecord, "argument must be {role, text} or [role, text]");
    }
  }
  return t;
}

Relation relation_from_json(const Json& v) {
  if (v.is_array()) {
    if (v.size() != 3 || !v[0].is_string() || !v[1].is_string() || !v[2].is_string())
      throw Error(ErrorCode::MalformedRecord, "relation arrays must be [subject, object, relation_type]");
    return {v[0].get<std::string>(), v[1].get<std::string>(), v[2].get<std::string>()};
  }
  if (!v.is_object()) throw Error(ErrorCode::MalformedRecord, "relation must be an object or array");
  return {require_string(v, "subject"), require_string(v, "object"), require_string(v, "relation")};
}

}  // namespace

std::string dump_line(const Json& j) { return j.dump(-1, ' ', false, Json::error_handler_t::strict); }
std::string dump_pretty(const Json& j) { return j.dump(2, ' ', false, Json::error_handler_t::strict) + "\n"; }

Json to_json(const AnswerSet& a) {
  Json j = Json::object();
  if (a.kind == AtomicKind::Classification) {
    j["labels"] = a.labels;
  } else {
    Json ex = Json::object();
    for (const auto& [q, s] : a.extractions) ex[q] = s;
    j["extractions"] = std::move(ex);
  }
  return j;
}

AnswerSet answer_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::MalformedRecord, "gold must be an object");
  const bool has_labels = j.contains("labels"), has_ex = j.contains("extractions");
  if (has_labels == has_ex) throw Error(ErrorCode::MalformedRecord, "gold needs exactly one of labels / extractions");
  if (has_labels) return AnswerSet::classification(string_list(j["labels"], "gold.labels"));
  const auto& ex = j["extractions"];
  if (!ex.is_object()) throw Error(ErrorCode::MalformedRecord, "gold.extractions must be an object");
  Extractions out;
  for (auto it = ex.begin(); it != ex.end(); ++it) out.emplace_back(it.key(), string_list(it.value(), "spans"));
  return AnswerSet::extraction(std::move(out));
}

Json to_json(const RawSample& s) {
  Json j = Json::object();
  j["id"] = s.id;
  j["dataset"] = s.dataset_id;
  j["task"] = to_string(s.task);
  j["lang"] = to_string(s.lang);
  j["text"] = s.text;
  if (s.text2) j["text2"] = *s.text2;
  if (s.mention) j["mention"] = *s.mention;
  if (!s.options.empty()) j["options"] = s.options;
  if (!s.triggers.empty()) {
    Json arr = Json::array();
    for (const auto& t : s.triggers) {
      Json tj = {{"trigger", t.text}, {"event_type", t.event_type}};
      if (!t.arguments.empty()) {
        Json args = Json::array();
        for (const auto& a : t.arguments) args.push_back({{"role", a.role}, {"text", a.text}});
        tj["arguments"] = std::move(args);
      }
      arr.push_back(std::move(tj));
    }
    j["triggers"] = std::move(arr);
  }
  if (!s.relations.empty()) {
    Json arr = Json::array();
    for (const auto& r : s.relations)
      arr.push_back({{"subject", r.subject}, {"object", r.object}, {"relation", r.relation}});
    j["relations"] = std::move(arr);
  }
  if (s.gold) j["gold"] = to_json(*s.gold);
  return j;
}

RawSample raw_sample_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::MalformedRecord, "record must be a JSON object");
  RawSample s;
  s.id = require_string(j, "id");
  s.dataset_id = require_string(j, "dataset");
  try {
    s.task = parse_task(require_string(j, "task"));
    s.lang = parse_lang(require_string(j, "lang"));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument) throw Error(ErrorCode::MalformedRecord, e.what());
    throw;
  }
  s.text = require_string(j, "text");
  s.text2 = optional_string(j, "text2");
  s.mention = optional_string(j, "mention");
  if (auto it = j.find("options"); it != j.end() && !it->is_null()) s.options = string_list(*it, "options");
  if (auto it = j.find("triggers"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw Error(ErrorCode::MalformedRecord, "triggers must be an array");
    for (const auto& t : *it) s.triggers.push_back(trigger_from_json(t));
  }
  if (auto it = j.find("relations"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw Error(ErrorCode::MalformedRecord, "relations must be an array");
    for (const auto& r : *it) s.relations.push_back(relation_from_json(r));
  }
  if (auto it = j.find("gold"); it != j.end() && !it->is_null()) s.gold = answer_from_json(*it);
  return s;
}

Json to_json(const AtomicInstance& inst) {
  Json j = Json::object();
  j["id"] = inst.id;
  j["source_id"] = inst.source_id;
  j["dataset"] = inst.dataset_id;
  j["task"] = to_string(inst.task);
  j["kind"] = to_string(inst.kind);
  j["lang"] = to_string(inst.lang);
  j["input_text"] = inst.input_text;
  j["candidates"] = inst.candidates;
  j["gold"] = to_json(inst.gold);
  return j;
}

AtomicInstance instance_from_json(const Json& j) {
  if (!j.is_object()) throw Error(ErrorCode::MalformedRecord, "instance must be a JSON object");
  AtomicInstance inst;
  inst.id = require_string(j, "id");
  inst.source_id = require_string(j, "source_id");
  inst.dataset_id = require_string(j, "dataset");
  inst.task = parse_task(require_string(j, "task"));
  inst.kind = parse_atomic_kind(require_string(j, "kind"));
  inst.lang = parse_lang(require_string(j, "lang"));
  inst.input_text = require_string(j, "input_text");
  inst.candidates = string_list(require(j, "candidates"), "candidates");
  inst.gold = answer_from_json(require(j, "gold"));
  if (inst.gold.kind != inst.kind) throw Error(ErrorCode::KindMismatch, "instance " + inst.id + " gold kind differs");
  return inst;
}

Json to_json(const DatasetDescriptor& d) {
  Json j = Json::object();
  j["dataset_id"] = d.dataset_id;
  j["task"] = to_string(d.task);
  j["lang"] = to_string(d.lang);
  j["role"] = to_string(d.role);
  j["label_universe"] = d.label_universe;
  if (!d.event_roles.empty()) {
    Json er = Json::object();
    for (const auto& [type, roles] : d.event_roles) er[type] = roles;
    j["event_roles"] = std::move(er);
  }
  Json paths = Json::object();
  for (const auto& [split, path] : d.splits) paths[split] = path;
  j["paths"] = std::move(paths);
  if (!d.split_sizes.empty()) {
    Json sizes = Json::object();
    for (const auto& [split, n] : d.split_sizes) sizes[split] = n;
    j["split_sizes"] = std::move(sizes);
  }
  return j;
}

DatasetDescriptor descriptor_from_json(const Json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidConfig, "dataset descriptor must be an object");
  DatasetDescriptor d;
  try {
    d.dataset_id = require_string(j, "dataset_id");
    d.task = parse_task(require_string(j, "task"));
    d.lang = parse_lang(require_string(j, "lang"));
    d.role = parse_role(require_string(j, "role"));
    if (auto it = j.find("label_universe"); it != j.end()) d.label_universe = string_list(*it, "label_universe");
    if (auto it = j.find("event_roles"); it != j.end()) {
      if (!it->is_object()) throw Error(ErrorCode::InvalidConfig, "event_roles must be an object");
      for (auto e = it->begin(); e != it->end(); ++e)
        d.event_roles.emplace_back(e.key(), string_list(e.value(), "event_roles"));
    }
    const auto& paths = require(j, "paths");
    if (!paths.is_object() || paths.empty()) throw Error(ErrorCode::InvalidConfig, "paths must be a non-empty object");
    for (auto it = paths.begin(); it != paths.end(); ++it) {
      if (!it.value().is_string()) throw Error(ErrorCode::InvalidConfig, "split paths must be strings");
      std::filesystem::path p = it.value().get<std::string>();
      if (p.is_relative()) p = base_dir / p;
      d.splits[it.key()] = p.lexically_normal().string();
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidConfig) throw;
    throw Error(ErrorCode::InvalidConfig, std::string("registry: ") + e.what());
  }
  return d;
}

std::vector<DatasetDescriptor> load_registry(const std::filesystem::path& path) {
  auto file = std::filesystem::is_directory(path) ? path / "registry.json" : path;
  Json root;
  try {
    root = Json::parse(read_file(file));
  } catch (const Json::parse_error& e) {
    throw Error(ErrorCode::InvalidConfig, "registry " + file.string() + ": " + e.what());
  }
  const Json& list = root.is_object() ? root.value("datasets", Json::array()) : root;
  if (!list.is_array()) throw Error(ErrorCode::InvalidConfig, "registry must hold a datasets array");
  std::vector<DatasetDescriptor> out;
  std::set<std::string> ids;
  for (const auto& d : list) {
    out.push_back(descriptor_from_json(d, file.parent_path()));
    if (!ids.insert(out.back().dataset_id).second)
      throw Error(ErrorCode::InvalidConfig, "registry lists dataset '" + out.back().dataset_id + "' twice");
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorCode::Io, "cannot write " + path.string());
  out << content;
  if (!out) throw Error(ErrorCode::Io, "write failed for " + path.string());
}

std::vector<AtomicInstance> read_instances(const std::filesystem::path& path) {
  std::vector<AtomicInstance> out;
  std::size_t line_no = 0;
  for (const auto& line : util::split_lines(read_file(path))) {
    ++line_no;
    if (util::trim(line).empty()) continue;
    try {
      out.push_back(instance_from_json(Json::parse(line)));
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::MalformedRecord, path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

void write_instances(const std::filesystem::path& path, const std::vector<AtomicInstance>& instances) {
  std::string body;
  for (const auto& inst : instances) body += dump_line(to_json(inst)) + "\n";
  write_file(path, body);
}

}  // namespace atomnlu

// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "pipeline/workspace.hpp"
#include "util/text.hpp"

namespace atomnlu::pipeline {

fs::path stage_dir(const RunConfig& config, std::string_view stage) { return config.out / std::string(stage); }

std::string display_path(const RunConfig& config, const fs::path& p) {
  std::error_code ec;
  const auto root = fs::weakly_canonical(config.out, ec);
  const auto full = fs::weakly_canonical(p, ec);
  if (!ec) {
    auto rel = full.lexically_relative(root);
    if (!rel.empty() && *rel.begin() != "..") return rel.generic_string();
  }
  return p.generic_string();
}

std::vector<Json> read_jsonl(const fs::path& path) {
  std::vector<Json> rows;
  std::size_t n = 0;
  for (const auto& line : util::split_lines(read_file(path))) {
    ++n;
    if (util::trim(line).empty()) continue;
    auto j = Json::parse(line, nullptr, false);
    if (j.is_discarded())
      throw Error(ErrorCode::MalformedRecord, path.string() + " line " + std::to_string(n) + ": invalid JSON");
    rows.push_back(std::move(j));
  }
  return rows;
}

void write_jsonl(const fs::path& path, const std::vector<Json>& rows) {
  std::string out;
  for (const auto& r : rows) out += dump_line(r) + "\n";
  write_file(path, out);
}

std::vector<DatasetDescriptor> read_stage_registry(const RunConfig& config, std::string_view stage) {
  const auto file = stage_dir(config, stage) / "registry.json";
  if (!fs::exists(file))
    throw Error(ErrorCode::Io, file.string() + " not found; run '" + std::string(stage) + "' first");
  return load_registry(file);
}

void write_stage_registry(const fs::path& file, std::vector<DatasetDescriptor> descriptors) {
  Json list = Json::array();
  for (auto& d : descriptors) {
    for (auto& [split, p] : d.splits) p = fs::path(p).lexically_relative(file.parent_path()).generic_string();
    list.push_back(to_json(d));
  }
  write_file(file, dump_pretty(Json{{"datasets", list}}));
}

}  // namespace atomnlu::pipeline

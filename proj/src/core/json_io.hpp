// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/types.hpp"

namespace atomnlu {

using Json = nlohmann::ordered_json;

/// Compact single-line dump; non-ASCII stays UTF-8.
std::string dump_line(const Json& j);
std::string dump_pretty(const Json& j);

Json to_json(const AnswerSet& a);
/// Accepts {"labels": [...]} or {"extractions": {query: [spans]}}.
AnswerSet answer_from_json(const Json& j);

Json to_json(const RawSample& s);
/// Structural decoding only; grammar checks live in ingestion.
/// Throws Error(MalformedRecord) / Error(MissingField).
RawSample raw_sample_from_json(const Json& j);

Json to_json(const AtomicInstance& inst);
AtomicInstance instance_from_json(const Json& j);

Json to_json(const DatasetDescriptor& d);
/// Relative split paths resolve against base_dir.
DatasetDescriptor descriptor_from_json(const Json& j, const std::filesystem::path& base_dir);

/// Registry file: {"datasets": [descriptor, ...]} or a bare array. A directory
/// argument resolves to <dir>/registry.json.
std::vector<DatasetDescriptor> load_registry(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

std::vector<AtomicInstance> read_instances(const std::filesystem::path& path);
void write_instances(const std::filesystem::path& path, const std::vector<AtomicInstance>& instances);

}  // namespace atomnlu

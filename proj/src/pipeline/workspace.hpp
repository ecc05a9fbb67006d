// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "pipeline/pipeline.hpp"

namespace atomnlu::pipeline {

namespace fs = std::filesystem;

/// <out>/<stage>
fs::path stage_dir(const RunConfig& config, std::string_view stage);

/// Path relative to the output root when inside it, else as given.
std::string display_path(const RunConfig& config, const fs::path& p);

std::vector<Json> read_jsonl(const fs::path& path);
void write_jsonl(const fs::path& path, const std::vector<Json>& rows);

/// Registry written by an earlier stage. Throws Error(Io) with a hint when missing.
std::vector<DatasetDescriptor> read_stage_registry(const RunConfig& config, std::string_view stage);
void write_stage_registry(const fs::path& file, std::vector<DatasetDescriptor> descriptors);

}  // namespace atomnlu::pipeline

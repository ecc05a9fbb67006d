// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "augment/augment.hpp"
#include "backend/backend.hpp"
#include "codec/codec.hpp"
#include "core/json_io.hpp"
#include "core/types.hpp"

namespace atomnlu::pipeline {

struct BackendSettings {
  std::string kind = "oracle";  // http | subprocess | oracle | scramble
  backend::HttpConfig http;
  std::string command;  // subprocess
  std::chrono::milliseconds timeout{60000};
  double scramble_fraction = 0.5;
  backend::GenerationRequest decode;
};

struct RunConfig {
  std::filesystem::path registry;  // registry.json or a directory holding one
  std::filesystem::path out = "out";
  std::optional<std::filesystem::path> input;  // command-specific input file
  std::uint64_t seed = 42;
  codec::TemplateMode template_mode = codec::TemplateMode::LanguageAgnostic;
  std::size_t parallelism = 4;
  std::size_t sample_size = 48;
  std::set<DatasetRole> train_roles{DatasetRole::HeldIn};
  std::set<DatasetRole> eval_roles{DatasetRole::HeldOut};
  std::string train_split = "train";
  std::string eval_split = "test";
  std::string segment_separator = "\t";
  augment::Stage stage = augment::Stage::Finetune;
  augment::AugmentationConfig augmentation;
  augment::BalanceConfig balance;
  BackendSettings backend;

  /// Applies one "section.key" setting. Throws Error(InvalidConfig).
  void set(std::string_view key, std::string_view value);

  /// Settings as recorded in manifests. The output directory is left out so
  /// that trees written to different places compare equal.
  Json to_json() const;

  void validate() const;
};

/// INI file; every "[section] key = value" goes through RunConfig::set.
/// Relative paths resolve against the file's directory.
RunConfig load_config(const std::filesystem::path& path);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

/// Documented keys, for help text and the README.
std::vector<std::pair<std::string, std::string>> config_keys();

struct Manifest {
  std::string command;
  std::vector<std::filesystem::path> inputs;
  std::vector<std::filesystem::path> outputs;
  std::optional<std::filesystem::path> upstream;
  Json extra = Json::object();
};

/// Writes <dir>/manifest.json with digests of all listed files. Paths under
/// the output root are stored relative to it.
void write_manifest(const RunConfig& config, const std::filesystem::path& dir, const Manifest& manifest);

struct CommandResult {
  std::string summary;
  std::vector<std::filesystem::path> outputs;
};

inline constexpr std::string_view kCommands[] = {"ingest",         "translate",          "augment", "balance",
                                                 "emit-train",     "gen-pt-prompts",     "parse-pt-responses",
                                                 "eval",           "score",              "report"};

/// Runs one pipeline command. Throws Error; backend failures carry backend codes.
CommandResult run_command(std::string_view command, const RunConfig& config);

/// Eval instances built in memory from the registry (ingest plus translate),
/// restricted to the eval roles and split.
std::vector<AtomicInstance> load_eval_instances(const RunConfig& config);

/// Advisory training hyper-parameters for external trainers.
Json training_sidecar(augment::Stage stage);

std::string version();

}  // namespace atomnlu::pipeline

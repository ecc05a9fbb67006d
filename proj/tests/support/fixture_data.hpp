// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "core/ingest.hpp"
#include "core/json_io.hpp"
#include "core/translate.hpp"
#include "test_support.hpp"

namespace atomnlu_test {

/// Every split of every fixture dataset, translated to atomic instances.
inline std::vector<atomnlu::AtomicInstance> fixture_instances() {
  std::vector<atomnlu::AtomicInstance> out;
  auto registry = atomnlu::load_registry(fixtures_dir() / "registry.json");
  for (auto& d : registry) {
    auto di = atomnlu::ingest_dataset(d);
    for (const auto& [split, samples] : di.splits)
      for (auto& inst : atomnlu::translate_samples(samples, d)) out.push_back(std::move(inst));
  }
  return out;
}

}  // namespace atomnlu_test

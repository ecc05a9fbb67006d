// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "core/types.hpp"

namespace atomnlu {

inline constexpr std::size_t kDefaultEvalSampleSize = 48;

/// Uniform sample without replacement of min(n, |dataset|) instances.
/// The result depends only on the set of instances and the seed: input is
/// ordered by id before drawing and the sample is returned in id order.
std::vector<AtomicInstance> sample_eval_records(const std::vector<AtomicInstance>& dataset,
                                                std::size_t n = kDefaultEvalSampleSize, std::uint64_t seed = 0);

}  // namespace atomnlu

// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

namespace atomnlu::util {

/// Seeded generator with portable draws.
///
/// std::uniform_int_distribution and std::shuffle are implementation-defined,
/// so every draw here is derived from raw mt19937_64 output. Outputs are
/// byte-identical across standard libraries for a given seed.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : seed_(seed), engine_(seed) {}

  std::uint64_t seed() const { return seed_; }
  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [lo, hi]. Requires lo <= hi.
  std::uint64_t uniform(std::uint64_t lo, std::uint64_t hi);

  /// Uniform double in [0, 1).
  double unit();

  /// Independent generator keyed by the root seed and key, not the current
  /// state, so derivations commute with any interleaving of draws.
  Rng derive(std::string_view key) const;

  template <class T>
  void shuffle(std::vector<T>& items) {
    for (std::size_t i = items.size(); i > 1; --i) {
      auto j = static_cast<std::size_t>(uniform(0, i - 1));
      std::swap(items[i - 1], items[j]);
    }
  }

  /// k distinct indices from [0, n), in draw order.
  std::vector<std::size_t> sample_indices(std::size_t n, std::size_t k);

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

std::uint64_t fnv1a64(std::string_view data);
std::uint64_t mix64(std::uint64_t x);

}  // namespace atomnlu::util

// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <chrono>

#include "backend/backend.hpp"
#include "util/digest.hpp"
#include "util/log.hpp"
#include "util/text.hpp"

namespace atomnlu::backend {
namespace {

// Uniform [0,1) draw keyed by (seed, prompt digest, unit index, salt).
double unit_draw(std::uint64_t seed, const std::string& digest, std::size_t unit, std::uint64_t salt) {
  auto h = util::mix64(seed ^ util::fnv1a64(digest));
  h = util::mix64(h ^ util::mix64(unit + 1));
  h = util::mix64(h ^ salt);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

}  // namespace

OracleBackend::OracleBackend(const std::vector<AtomicInstance>& instances, codec::TemplateMode mode) {
  for (const auto& inst : instances) {
    auto digest = util::sha256_hex(codec::render_prompt(inst, mode));
    auto [it, inserted] = by_digest_.emplace(digest, inst);
    if (!inserted && !equivalent(it->second.gold, inst.gold))
      log::warn("oracle: instances " + it->second.id + " and " + inst.id +
                " share a prompt but not a gold answer; keeping the first");
  }
}

const AtomicInstance* OracleBackend::lookup(const std::string& prompt) const {
  auto it = by_digest_.find(util::sha256_hex(prompt));
  return it == by_digest_.end() ? nullptr : &it->second;
}

BackendResult OracleBackend::generate(const GenerationRequest& request) {
  const auto* inst = lookup(request.prompt);
  if (!inst) throw Error(ErrorCode::ProtocolError, "oracle has no instance for this prompt");
  return {codec::render_gold_completion(*inst), std::chrono::milliseconds(0), 1};
}

ScrambleBackend::ScrambleBackend(const std::vector<AtomicInstance>& instances, codec::TemplateMode mode,
                                 double fraction, std::uint64_t seed)
    : OracleBackend(instances, mode), fraction_(fraction), seed_(seed) {
  if (!(fraction >= 0.0 && fraction <= 1.0))
    throw Error(ErrorCode::InvalidArgument, "scramble fraction must lie in [0, 1]");
}

BackendResult ScrambleBackend::generate(const GenerationRequest& request) {
  const auto* inst = lookup(request.prompt);
  if (!inst) throw Error(ErrorCode::ProtocolError, "scramble backend has no instance for this prompt");
  const auto digest = util::sha256_hex(request.prompt);
  auto damaged = [&](std::size_t unit) { return unit_draw(seed_, digest, unit, 0) < fraction_; };
  auto deletes = [&](std::size_t unit) { return unit_draw(seed_, digest, unit, 1) < 0.5; };

  AnswerSet out;
  out.kind = inst->kind;
  if (inst->kind == AtomicKind::Classification) {
    std::size_t unit = 0;
    for (const auto& label : inst->gold.labels) {
      const auto u = unit++;
      if (!damaged(u)) {
        util::append_unique(out.labels, label);
      } else if (!deletes(u)) {
        std::string wrong;
        for (const auto& c : inst->candidates)
          if (std::find(inst->gold.labels.begin(), inst->gold.labels.end(), c) == inst->gold.labels.end()) {
            wrong = c;
            break;
          }
        util::append_unique(out.labels, wrong.empty() ? label + " x" : wrong);
      }
    }
  } else {
    std::size_t unit = 0;
    for (const auto& [query, spans] : inst->gold.extractions) {
      if (spans.empty()) continue;
      const auto u = unit++;
      if (!damaged(u)) {
        out.extractions.emplace_back(query, spans);
      } else if (!deletes(u)) {
        std::vector<std::string> garbled;
        for (const auto& s : spans) garbled.push_back(s + " x");
        out.extractions.emplace_back(query, std::move(garbled));
      }
    }
  }
  return {codec::serialize_answer(out, inst->lang), std::chrono::milliseconds(0), 1};
}

}  // namespace atomnlu::backend

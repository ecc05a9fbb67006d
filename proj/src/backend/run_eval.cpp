// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <atomic>
#include <fstream>
#include <thread>

#include "backend/backend.hpp"
#include "core/json_io.hpp"
#include "util/digest.hpp"
#include "util/log.hpp"
#include "util/text.hpp"

namespace atomnlu::backend {
namespace {

struct JournalEntry {
  std::string prompt_digest;
  std::string completion;
};

// Entries whose completion digest checks out; later lines win.
std::map<std::string, JournalEntry> load_journal(const std::filesystem::path& path) {
  std::map<std::string, JournalEntry> out;
  if (!std::filesystem::exists(path)) return out;
  std::size_t line_no = 0;
  for (const auto& line : util::split_lines(read_file(path))) {
    ++line_no;
    if (util::trim(line).empty()) continue;
    try {
      auto j = Json::parse(line);
      JournalEntry e{j.at("prompt_digest").get<std::string>(), j.at("completion").get<std::string>()};
      if (util::sha256_hex(e.completion) != j.at("digest").get<std::string>()) {
        log::warn("journal line " + std::to_string(line_no) + ": digest mismatch, ignoring");
        continue;
      }
      out[j.at("instance_id").get<std::string>()] = std::move(e);
    } catch (const Json::exception&) {
      // A torn final line from an interrupted run.
      log::warn("journal line " + std::to_string(line_no) + " is unreadable, ignoring");
    }
  }
  return out;
}

std::string journal_line(const std::string& id, const JournalEntry& e) {
  Json j = Json::object();
  j["instance_id"] = id;
  j["digest"] = util::sha256_hex(e.completion);
  j["prompt_digest"] = e.prompt_digest;
  j["completion"] = e.completion;
  return dump_line(j) + "\n";
}

}  // namespace

std::vector<metrics::EvalResult> run_eval(const std::vector<AtomicInstance>& instances, Backend& backend,
                                          const EvalOptions& options) {
  if (options.parallelism < 1) throw Error(ErrorCode::InvalidArgument, "parallelism must be >= 1");
  options.defaults.validate();

  std::vector<const AtomicInstance*> order;
  for (const auto& inst : instances) order.push_back(&inst);
  std::sort(order.begin(), order.end(), [](const auto* a, const auto* b) { return a->id < b->id; });

  std::vector<std::string> prompts(order.size());
  for (std::size_t i = 0; i < order.size(); ++i) prompts[i] = codec::render_prompt(*order[i], options.mode);

  std::map<std::string, JournalEntry> journal;
  std::ofstream journal_out;
  if (options.journal) {
    journal = load_journal(*options.journal);
    if (options.journal->has_parent_path()) std::filesystem::create_directories(options.journal->parent_path());
    journal_out.open(*options.journal, std::ios::app | std::ios::binary);
    if (!journal_out) throw Error(ErrorCode::Io, "cannot open journal " + options.journal->string());
  }

  std::vector<std::optional<std::string>> completions(order.size());
  std::vector<std::string> failures(order.size());
  std::vector<std::size_t> pending;
  for (std::size_t i = 0; i < order.size(); ++i) {
    auto it = journal.find(order[i]->id);
    if (it != journal.end() && it->second.prompt_digest == util::sha256_hex(prompts[i]))
      completions[i] = it->second.completion;
    else
      pending.push_back(i);
  }

  std::mutex journal_mutex;
  std::atomic<std::size_t> cursor{0};
  auto work = [&] {
    for (std::size_t p = cursor++; p < pending.size(); p = cursor++) {
      const auto i = pending[p];
      GenerationRequest req = options.defaults;
      req.prompt = prompts[i];
      try {
        auto result = backend.generate(req);
        if (journal_out.is_open()) {
          std::lock_guard lock(journal_mutex);
          journal_out << journal_line(order[i]->id, {util::sha256_hex(prompts[i]), result.text}) << std::flush;
        }
        completions[i] = std::move(result.text);
      } catch (const std::exception& e) {
        failures[i] = e.what();
      }
    }
  };
  const std::size_t workers =
      std::max<std::size_t>(1, std::min({options.parallelism, backend.max_concurrency(), pending.size()}));
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < workers; ++t) pool.emplace_back(work);
  }

  std::vector<metrics::EvalResult> out;
  std::map<std::string, std::pair<std::size_t, std::size_t>> per_dataset;  // (total, failed)
  std::map<std::string, std::string> first_failure;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto& inst = *order[i];
    auto& tally = per_dataset[inst.dataset_id];
    ++tally.first;
    codec::ParsedAnswer parsed;
    if (completions[i]) {
      parsed = codec::parse_response(inst.kind, inst.candidates, *completions[i]);
    } else {
      ++tally.second;
      first_failure.emplace(inst.dataset_id, failures[i]);
      parsed.answers.kind = inst.kind;
      parsed.anomalies.push_back({codec::AnomalyKind::BackendFailure, failures[i]});
    }
    out.emplace_back(inst, std::move(parsed));
  }
  for (const auto& [ds, tally] : per_dataset)
    if (tally.first > 0 && tally.first == tally.second)
      throw Error(ErrorCode::BackendUnavailable, "every instance of dataset '" + ds + "' failed: " + first_failure[ds]);

  if (journal_out.is_open()) {
    journal_out.close();
    std::string body;
    for (std::size_t i = 0; i < order.size(); ++i)
      if (completions[i]) body += journal_line(order[i]->id, {util::sha256_hex(prompts[i]), *completions[i]});
    write_file(*options.journal, body);
  }
  return out;
}

}  // namespace atomnlu::backend

// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <iomanip>
#include <map>
#include <sstream>

#include "augment/augment.hpp"
#include "core/ingest.hpp"
#include "core/translate.hpp"
#include "metrics/metrics.hpp"
#include "ptgen/ptgen.hpp"
#include "util/rng.hpp"
#include "util/text.hpp"

namespace atomnlu::ptgen {
namespace {

constexpr TaskKind kPtTasks[] = {TaskKind::CLS, TaskKind::ET, TaskKind::NER};
constexpr Lang kPtLangs[] = {Lang::En, Lang::Zh};

RawSample make_sample(const PtSample& src, TaskKind task, std::string id) {
  RawSample s;
  s.id = std::move(id);
  s.dataset_id = pt_dataset_id(src.lang, task);
  s.task = task;
  s.lang = src.lang;
  s.text = src.text;
  return s;
}

}  // namespace

std::string pt_dataset_id(Lang lang, TaskKind task) {
  return "pt-" + std::string(to_string(lang)) + "-" + util::ascii_lower(to_string(task));
}

PtCorpus assemble_pt_corpus(const std::vector<PtSample>& samples, std::size_t m_neg, std::uint64_t seed) {
  PtCorpus corpus;
  std::map<std::pair<Lang, TaskKind>, DatasetDescriptor> parts;
  for (Lang lang : kPtLangs)
    for (TaskKind task : kPtTasks) {
      DatasetDescriptor d;
      d.dataset_id = pt_dataset_id(lang, task);
      d.task = task;
      d.lang = lang;
      d.role = DatasetRole::Pretrain;
      parts.emplace(std::pair{lang, task}, std::move(d));
    }

  std::map<std::pair<Lang, TaskKind>, std::vector<RawSample>> raw;
  auto add = [&](RawSample s) {
    normalize_sample(s);
    auto& d = parts.at({s.lang, s.task});
    extend_universe(d, s);
    raw[{s.lang, s.task}].push_back(std::move(s));
  };

  for (const auto& src : samples) {
    if (src.kind == PtKind::ClsBundle) {
      const std::pair<const char*, std::vector<std::string>> heads[] = {
          {"topic", src.categories}, {"sentiment", {src.sentiment}}, {"intent", {src.intent}}};
      for (const auto& [suffix, labels] : heads) {
        auto s = make_sample(src, TaskKind::CLS, src.id + "-" + suffix);
        s.gold = AnswerSet::classification(labels);
        add(std::move(s));
      }
      continue;
    }
    Extractions by_type;
    std::size_t ordinal = 0;
    for (const auto& [entity, types] : src.entities) {
      if (!util::contains(src.text, entity)) {
        ++corpus.skipped_mentions;
        continue;
      }
      auto et = make_sample(src, TaskKind::ET, src.id + "-e" + std::to_string(ordinal++));
      et.mention = entity;
      et.gold = AnswerSet::classification(types);
      add(std::move(et));
      for (const auto& t : types) {
        auto it = std::find_if(by_type.begin(), by_type.end(), [&](const auto& e) { return e.first == t; });
        if (it == by_type.end()) by_type.emplace_back(t, std::vector<std::string>{entity});
        else util::append_unique(it->second, entity);
      }
    }
    if (by_type.empty()) continue;
    auto ner = make_sample(src, TaskKind::NER, src.id);
    ner.gold = AnswerSet::extraction(std::move(by_type));
    add(std::move(ner));
  }

  const util::Rng root(seed);
  for (auto& [key, d] : parts) {
    auto& part = raw[key];
    std::sort(part.begin(), part.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
    const auto schema = build_schema(d);
    PtStatsRow row{key.first, key.second, 0, 0, 0};
    row.labels = d.label_universe.size();
    for (auto inst : translate_samples(part, d)) {
      const auto& universe = inst.kind == AtomicKind::Classification ? schema.labels : schema.queries;
      auto rng = root.derive(inst.id);
      auto candidates = inst.gold.positives();
      auto negatives = augment::sample_negative_labels(candidates, universe, m_neg, rng);
      candidates.insert(candidates.end(), negatives.begin(), negatives.end());
      rng.shuffle(candidates);
      inst.candidates = std::move(candidates);
      inst.validate();
      row.instances += 1;
      row.tokens += metrics::tokenize(inst.input_text, inst.lang).size();
      corpus.instances.push_back(std::move(inst));
    }
    corpus.stats.instances += row.instances;
    corpus.stats.tokens += row.tokens;
    corpus.stats.labels += row.labels;
    corpus.stats.rows.push_back(row);
    corpus.samples.insert(corpus.samples.end(), part.begin(), part.end());
    d.split_sizes["train"] = part.size();
    corpus.descriptors.push_back(d);
  }
  return corpus;
}

std::string render_stats_table(const PtCorpusStats& stats) {
  std::ostringstream os;
  os << std::left << std::setw(6) << "Lang" << std::setw(6) << "Task" << std::right << std::setw(12) << "Instances"
     << std::setw(12) << "Tokens" << std::setw(10) << "Labels" << "\n";
  for (const auto& r : stats.rows)
    os << std::left << std::setw(6) << to_string(r.lang) << std::setw(6) << to_string(r.task) << std::right
       << std::setw(12) << r.instances << std::setw(12) << r.tokens << std::setw(10) << r.labels << "\n";
  os << std::left << std::setw(12) << "All" << std::right << std::setw(12) << stats.instances << std::setw(12)
     << stats.tokens << std::setw(10) << stats.labels << "\n";
  return os.str();
}

}  // namespace atomnlu::ptgen

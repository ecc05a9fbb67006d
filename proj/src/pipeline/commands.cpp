// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "core/ingest.hpp"
#include "core/sampling.hpp"
#include "core/translate.hpp"
#include "metrics/metrics.hpp"
#include "pipeline/pipeline.hpp"
#include "pipeline/workspace.hpp"
#include "ptgen/ptgen.hpp"
#include "util/log.hpp"
#include "util/rng.hpp"
#include "util/text.hpp"

namespace atomnlu::pipeline {
namespace {

std::string split_file(std::string_view dataset, std::string_view split) {
  return std::string(dataset) + "/" + std::string(split) + ".jsonl";
}

fs::path registry_file(const RunConfig& config) {
  if (config.registry.empty()) throw Error(ErrorCode::InvalidConfig, "no registry configured (run.registry / --datasets)");
  return fs::is_directory(config.registry) ? config.registry / "registry.json" : config.registry;
}

std::vector<AtomicInstance> read_instance_file(const fs::path& p) {
  if (!fs::exists(p)) throw Error(ErrorCode::Io, p.string() + " not found");
  return read_instances(p);
}

std::vector<RawSample> read_samples(const fs::path& p) {
  std::vector<RawSample> out;
  for (const auto& j : read_jsonl(p)) out.push_back(raw_sample_from_json(j));
  return out;
}

std::string issue_summary(const std::string& dataset, const DatasetIngest& di) {
  std::ostringstream os;
  std::size_t shown = 0;
  for (const auto& [split, issue] : di.issues) {
    if (shown++ == 10) {
      os << "\n  ... " << di.issues.size() - 10 << " more";
      break;
    }
    os << "\n  " << dataset << "/" << split << " line " << issue.line << ": " << issue.message;
  }
  return os.str();
}

// ---------------------------------------------------------------- ingest

CommandResult cmd_ingest(const RunConfig& config) {
  const auto reg = registry_file(config);
  auto descriptors = load_registry(reg);
  const auto dir = stage_dir(config, "ingest");
  Manifest m{"ingest", {reg}, {}, std::nullopt, Json::object()};

  std::vector<std::pair<std::string, DatasetIngest>> ingested;
  std::string problems;
  ErrorCode first_code = ErrorCode::MalformedRecord;
  for (auto& d : descriptors) {
    for (const auto& [split, p] : d.splits) m.inputs.push_back(p);
    auto di = ingest_dataset(d);
    if (!di.issues.empty()) {
      if (problems.empty()) first_code = di.issues.front().second.code;
      problems += issue_summary(d.dataset_id, di);
    }
    if (di.separator_span_warnings)
      log::warn(d.dataset_id + ": " + std::to_string(di.separator_span_warnings) +
                " spans contain a candidate separator");
    ingested.emplace_back(d.dataset_id, std::move(di));
  }
  if (!problems.empty()) throw Error(first_code, "ingestion rejected records:" + problems);

  std::size_t total = 0;
  Json counts = Json::object();
  for (std::size_t i = 0; i < descriptors.size(); ++i) {
    auto& d = descriptors[i];
    for (auto& [split, samples] : ingested[i].second.splits) {
      std::vector<Json> rows;
      for (const auto& s : samples) rows.push_back(to_json(s));
      const auto file = dir / split_file(d.dataset_id, split);
      write_jsonl(file, rows);
      d.splits[split] = file;
      m.outputs.push_back(file);
      total += samples.size();
    }
    counts[d.dataset_id] = d.split_sizes;
  }
  write_stage_registry(dir / "registry.json", descriptors);
  m.outputs.insert(m.outputs.begin(), dir / "registry.json");
  m.extra["split_sizes"] = counts;
  write_manifest(config, dir, m);
  return {"ingested " + std::to_string(total) + " samples from " + std::to_string(descriptors.size()) +
              " datasets into " + dir.string(),
          m.outputs};
}

// ------------------------------------------------------------- translate

CommandResult cmd_translate(const RunConfig& config) {
  auto descriptors = read_stage_registry(config, "ingest");
  const auto dir = stage_dir(config, "translate");
  const auto upstream = stage_dir(config, "ingest") / "manifest.json";
  Manifest m{"translate", {stage_dir(config, "ingest") / "registry.json"}, {}, upstream, Json::object()};
  const TranslateOptions opts{config.segment_separator};

  std::size_t total = 0;
  Json counts = Json::object();
  for (auto& d : descriptors) {
    for (auto& [split, p] : d.splits) {
      m.inputs.push_back(p);
      auto instances = translate_samples(read_samples(p), d, opts);
      const auto file = dir / split_file(d.dataset_id, split);
      write_instances(file, instances);
      counts[d.dataset_id][split] = instances.size();
      total += instances.size();
      p = file;
      m.outputs.push_back(file);
    }
  }
  write_stage_registry(dir / "registry.json", descriptors);
  m.outputs.insert(m.outputs.begin(), dir / "registry.json");
  m.extra["instances"] = counts;
  write_manifest(config, dir, m);
  return {"translated into " + std::to_string(total) + " atomic instances in " + dir.string(), m.outputs};
}

// --------------------------------------------------------------- augment

CommandResult cmd_augment(const RunConfig& config) {
  auto descriptors = read_stage_registry(config, "translate");
  const auto dir = stage_dir(config, "augment");
  Manifest m{"augment", {stage_dir(config, "translate") / "registry.json"}, {},
             stage_dir(config, "translate") / "manifest.json", Json::object()};

  augment::UniverseLookup universes;
  std::vector<AtomicInstance> source;
  for (const auto& d : descriptors) {
    if (!config.train_roles.count(d.role)) continue;
    auto it = d.splits.find(config.train_split);
    if (it == d.splits.end()) continue;
    const auto schema = build_schema(d);
    universes[{d.dataset_id, AtomicKind::Classification}] = schema.labels;
    universes[{d.dataset_id, AtomicKind::Extraction}] = schema.queries;
    auto part = read_instance_file(it->second);
    // EXT candidates of MRC_SE / RE come from the sample; keep them drawable.
    for (const auto& inst : part) {
      auto& u = universes[{inst.dataset_id, inst.kind}];
      util::append_unique(u, inst.candidates);
    }
    source.insert(source.end(), part.begin(), part.end());
    m.inputs.push_back(it->second);
  }
  if (source.empty())
    throw Error(ErrorCode::InvalidConfig, "no '" + config.train_split + "' split for the configured train roles");

  auto cfg = config.augmentation;
  cfg.seed = config.seed;
  auto expansion = augment::expand_corpus(source, universes, cfg, config.parallelism);
  const auto file = dir / "instances.jsonl";
  write_instances(file, expansion.instances);
  m.outputs.push_back(file);
  m.extra = Json{{"source_instances", source.size()},
                 {"variants", expansion.instances.size()},
                 {"no_positive_instances", expansion.no_positive_count}};
  write_manifest(config, dir, m);
  return {"expanded " + std::to_string(source.size()) + " instances into " +
              std::to_string(expansion.instances.size()) + " instructions (" +
              std::to_string(expansion.no_positive_count) + " without positives)",
          m.outputs};
}

// --------------------------------------------------------------- balance

CommandResult cmd_balance(const RunConfig& config) {
  const auto in = config.input.value_or(stage_dir(config, "augment") / "instances.jsonl");
  const auto dir = stage_dir(config, "balance");
  Manifest m{"balance", {in}, {}, std::nullopt, Json::object()};
  if (!config.input) m.upstream = stage_dir(config, "augment") / "manifest.json";

  auto instances = read_instance_file(in);
  util::Rng rng = util::Rng(config.seed).derive("balance");
  auto result = augment::balance_corpus(instances, config.balance, rng);

  Json retention = Json::array();
  for (const auto& [key, r] : result.retention)
    retention.push_back(Json{{"dataset", key.first}, {"label", key.second}, {"before", r.before}, {"after", r.after}});
  const auto file = dir / "instances.jsonl";
  write_instances(file, result.kept);
  write_file(dir / "retention.json", dump_pretty(retention));
  m.outputs = {file, dir / "retention.json"};
  m.extra = Json{{"before", instances.size()}, {"after", result.kept.size()}, {"retention", retention}};
  write_manifest(config, dir, m);
  return {"kept " + std::to_string(result.kept.size()) + " of " + std::to_string(instances.size()) + " instructions",
          m.outputs};
}

// ------------------------------------------------------------ emit-train

CommandResult cmd_emit_train(const RunConfig& config) {
  const bool pretrain = config.stage == augment::Stage::Pretrain;
  const auto default_in =
      pretrain ? stage_dir(config, "pt-corpus") / "instances.jsonl" : stage_dir(config, "balance") / "instances.jsonl";
  const auto in = config.input.value_or(default_in);
  const auto dir = stage_dir(config, "train") / std::string(augment::to_string(config.stage));
  Manifest m{"emit-train", {in}, {}, std::nullopt, Json::object()};
  if (!config.input) m.upstream = in.parent_path() / "manifest.json";

  auto records = augment::emit_training_records(read_instance_file(in), config.template_mode, config.stage);
  std::vector<Json> rows;
  for (const auto& r : records)
    rows.push_back(Json{{"prompt", r.prompt},
                        {"completion", r.completion},
                        {"dataset", r.dataset_id},
                        {"task", to_string(r.task)},
                        {"kind", to_string(r.kind)},
                        {"lang", to_string(r.lang)},
                        {"stage", augment::to_string(r.stage)}});
  const auto file = dir / "records.jsonl";
  write_jsonl(file, rows);
  write_file(dir / "trainer.json", dump_pretty(training_sidecar(config.stage)));
  m.outputs = {file, dir / "trainer.json"};
  m.extra = Json{{"records", rows.size()}};
  write_manifest(config, dir, m);
  return {"wrote " + std::to_string(rows.size()) + " " + std::string(augment::to_string(config.stage)) +
              " records to " + file.string(),
          m.outputs};
}

// -------------------------------------------------------------- backends

std::unique_ptr<backend::Backend> make_backend(const RunConfig& config, const std::vector<AtomicInstance>& instances) {
  const auto& b = config.backend;
  if (b.kind == "oracle") return std::make_unique<backend::OracleBackend>(instances, config.template_mode);
  if (b.kind == "scramble")
    return std::make_unique<backend::ScrambleBackend>(instances, config.template_mode, b.scramble_fraction,
                                                      config.seed);
  if (b.kind == "http") return std::make_unique<backend::HttpBackend>(b.http);
  if (b.kind == "subprocess") return std::make_unique<backend::SubprocessBackend>(b.command, b.timeout, b.http.retry);
  throw Error(ErrorCode::InvalidConfig, "unknown backend '" + b.kind + "'");
}

// -------------------------------------------------------- gen-pt-prompts

CommandResult cmd_gen_pt_prompts(const RunConfig& config) {
  if (!config.input) throw Error(ErrorCode::InvalidConfig, "gen-pt-prompts needs an input file of passages");
  const auto dir = stage_dir(config, "pt-prompts");
  Manifest m{"gen-pt-prompts", {*config.input}, {}, std::nullopt, Json::object()};

  std::vector<ptgen::PtGenerationPrompt> prompts;
  std::vector<std::string> ids;
  std::size_t n = 0;
  for (const auto& j : read_jsonl(*config.input)) {
    ++n;
    try {
      const auto id = j.at("id").get<std::string>();
      const auto lang = parse_lang(j.at("lang").get<std::string>());
      const auto text = j.at("text").get<std::string>();
      for (auto kind : {ptgen::PtKind::ClsBundle, ptgen::PtKind::EntityBundle}) {
        prompts.push_back(ptgen::build_pt_prompt(kind, lang, text));
        ids.push_back(id);
      }
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::MalformedRecord, "passage " + std::to_string(n) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedRecord, "passage " + std::to_string(n) + ": " + e.what());
    }
  }

  std::vector<Json> rows;
  for (std::size_t i = 0; i < prompts.size(); ++i)
    rows.push_back(Json{{"id", ids[i]},
                        {"kind", ptgen::to_string(prompts[i].kind)},
                        {"lang", to_string(prompts[i].lang)},
                        {"text", prompts[i].text},
                        {"prompt", prompts[i].rendered}});
  write_jsonl(dir / "prompts.jsonl", rows);
  m.outputs.push_back(dir / "prompts.jsonl");

  // Only real generators can answer these prompts.
  std::string extra;
  if (config.backend.kind == "http" || config.backend.kind == "subprocess") {
    auto gen = make_backend(config, {});
    std::vector<std::optional<std::string>> responses(prompts.size());
    std::mutex mu;
    std::size_t next = 0, failed = 0;
    const auto workers = std::max<std::size_t>(1, std::min({config.parallelism, gen->max_concurrency(), prompts.size()}));
    {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
          for (;;) {
            std::size_t i;
            {
              std::lock_guard lock(mu);
              if (next == prompts.size()) return;
              i = next++;
            }
            auto req = config.backend.decode;
            req.prompt = prompts[i].rendered;
            try {
              responses[i] = gen->generate(req).text;
            } catch (const Error& e) {
              std::lock_guard lock(mu);
              ++failed;
              log::warn("PT generation for '" + ids[i] + "' failed: " + e.what());
            }
          }
        });
    }
    if (failed == prompts.size() && !prompts.empty())
      throw Error(ErrorCode::BackendUnavailable, "every PT generation request failed");
    std::vector<Json> out;
    for (std::size_t i = 0; i < prompts.size(); ++i) {
      if (!responses[i]) continue;
      auto r = rows[i];
      r.erase("prompt");
      r["response"] = *responses[i];
      out.push_back(std::move(r));
    }
    write_jsonl(dir / "responses.jsonl", out);
    m.outputs.push_back(dir / "responses.jsonl");
    m.extra["generation_failures"] = failed;
    extra = ", " + std::to_string(out.size()) + " responses";
  }
  m.extra["prompts"] = rows.size();
  write_manifest(config, dir, m);
  return {"built " + std::to_string(rows.size()) + " PT prompts" + extra, m.outputs};
}

// ---------------------------------------------------- parse-pt-responses

CommandResult cmd_parse_pt_responses(const RunConfig& config) {
  const auto in = config.input.value_or(stage_dir(config, "pt-prompts") / "responses.jsonl");
  if (!fs::exists(in)) throw Error(ErrorCode::Io, in.string() + " not found");
  const auto dir = stage_dir(config, "pt-corpus");
  Manifest m{"parse-pt-responses", {in}, {}, std::nullopt, Json::object()};
  if (!config.input) m.upstream = stage_dir(config, "pt-prompts") / "manifest.json";

  std::vector<ptgen::PtSample> samples;
  std::vector<Json> rejected;
  std::size_t n = 0;
  for (const auto& j : read_jsonl(in)) {
    ++n;
    ptgen::PtParseResult r;
    std::string id;
    try {
      id = j.at("id").get<std::string>();
      r = ptgen::parse_pt_response(ptgen::parse_pt_kind(j.at("kind").get<std::string>()),
                                   parse_lang(j.at("lang").get<std::string>()), id, j.at("text").get<std::string>(),
                                   j.at("response").get<std::string>());
    } catch (const Json::exception& e) {
      throw Error(ErrorCode::MalformedRecord, in.string() + " line " + std::to_string(n) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::MalformedRecord, in.string() + " line " + std::to_string(n) + ": " + e.what());
    }
    if (r.ok()) {
      samples.push_back(std::move(*r.sample));
      continue;
    }
    Json reasons = Json::array();
    for (auto f : r.failures) reasons.push_back(ptgen::to_string(f));
    log::warn("skipping PT response '" + id + "' (" + util::join(reasons.get<std::vector<std::string>>(), ", ") + ")");
    rejected.push_back(Json{{"id", id}, {"kind", j.at("kind")}, {"reasons", reasons}, {"detail", r.detail}});
  }

  auto corpus = ptgen::assemble_pt_corpus(samples, config.augmentation.m_neg, config.seed);
  for (auto& d : corpus.descriptors) {
    std::vector<Json> rows;
    for (const auto& s : corpus.samples)
      if (s.dataset_id == d.dataset_id) rows.push_back(to_json(s));
    const auto file = dir / split_file(d.dataset_id, "train");
    write_jsonl(file, rows);
    d.splits["train"] = file;
    m.outputs.push_back(file);
  }
  write_stage_registry(dir / "registry.json", corpus.descriptors);
  write_instances(dir / "instances.jsonl", corpus.instances);
  write_jsonl(dir / "rejected.jsonl", rejected);

  Json rows = Json::array();
  for (const auto& r : corpus.stats.rows)
    rows.push_back(Json{{"lang", to_string(r.lang)},
                        {"task", to_string(r.task)},
                        {"instances", r.instances},
                        {"tokens", r.tokens},
                        {"labels", r.labels}});
  const Json stats{{"rows", rows},
                   {"total",
                    {{"instances", corpus.stats.instances},
                     {"tokens", corpus.stats.tokens},
                     {"labels", corpus.stats.labels}}}};
  write_file(dir / "stats.json", dump_pretty(stats));
  write_file(dir / "stats.txt", ptgen::render_stats_table(corpus.stats));
  for (auto name : {"registry.json", "instances.jsonl", "rejected.jsonl", "stats.json", "stats.txt"})
    m.outputs.push_back(dir / name);
  m.extra = Json{{"responses", n},
                 {"accepted", samples.size()},
                 {"rejected", rejected.size()},
                 {"skipped_mentions", corpus.skipped_mentions}};
  write_manifest(config, dir, m);
  return {"accepted " + std::to_string(samples.size()) + " of " + std::to_string(n) + " responses; " +
              std::to_string(corpus.instances.size()) + " PT instances",
          m.outputs};
}

// ------------------------------------------------------------------ eval

Json result_json(const metrics::EvalResult& r) {
  Json anomalies = Json::array();
  for (const auto& a : r.second.anomalies)
    anomalies.push_back(Json{{"kind", codec::to_string(a.kind)}, {"payload", a.payload}});
  return Json{{"instance", to_json(r.first)},
              {"completion", r.second.raw_text},
              {"answer", to_json(r.second.answers)},
              {"anomalies", anomalies}};
}

codec::AnomalyKind parse_anomaly(std::string_view s) {
  using K = codec::AnomalyKind;
  for (auto k : {K::UnknownQuery, K::OutOfCandidateLabel, K::DuplicateQueryLine, K::EmptyOutput, K::MalformedLine,
                 K::BackendFailure})
    if (codec::to_string(k) == s) return k;
  throw Error(ErrorCode::MalformedRecord, "unknown anomaly kind '" + std::string(s) + "'");
}

metrics::EvalResult result_from_json(const Json& j) {
  try {
    codec::ParsedAnswer p;
    p.answers = answer_from_json(j.at("answer"));
    p.raw_text = j.at("completion").get<std::string>();
    for (const auto& a : j.at("anomalies"))
      p.anomalies.push_back({parse_anomaly(a.at("kind").get<std::string>()), a.at("payload").get<std::string>()});
    return {instance_from_json(j.at("instance")), std::move(p)};
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, std::string("eval result: ") + e.what());
  }
}

struct EvalSet {
  std::vector<AtomicInstance> instances;
  std::vector<fs::path> inputs;
};

EvalSet collect_eval_set(const RunConfig& config) {
  EvalSet set;
  const auto reg = registry_file(config);
  set.inputs.push_back(reg);
  std::map<std::pair<std::string, AtomicKind>, std::vector<AtomicInstance>> groups;
  const TranslateOptions opts{config.segment_separator};
  for (auto d : load_registry(reg)) {
    if (!config.eval_roles.count(d.role)) continue;
    if (!d.splits.count(config.eval_split)) {
      log::warn(d.dataset_id + " has no '" + config.eval_split + "' split; skipped");
      continue;
    }
    const auto path = d.splits.at(config.eval_split);
    set.inputs.push_back(path);
    // Universes grow from every split so candidates match the translate stage.
    auto di = ingest_dataset(d);
    if (!di.issues.empty())
      throw Error(di.issues.front().second.code, "ingestion rejected records:" + issue_summary(d.dataset_id, di));
    for (auto& inst : translate_samples(di.splits.at(config.eval_split), d, opts))
      groups[{inst.dataset_id, inst.kind}].push_back(std::move(inst));
  }
  const util::Rng root(config.seed);
  for (auto& [key, group] : groups) {
    auto seed = root.derive(key.first + "/" + std::string(to_string(key.second))).next();
    auto picked = sample_eval_records(group, config.sample_size, seed);
    set.instances.insert(set.instances.end(), picked.begin(), picked.end());
  }
  if (set.instances.empty())
    throw Error(ErrorCode::InvalidConfig, "no dataset matches the eval roles with a '" + config.eval_split + "' split");
  return set;
}

CommandResult cmd_eval(const RunConfig& config) {
  auto set = collect_eval_set(config);
  const auto dir = stage_dir(config, "eval");
  Manifest m{"eval", set.inputs, {}, std::nullopt, Json::object()};

  auto backend = make_backend(config, set.instances);
  backend::EvalOptions opts;
  opts.parallelism = config.parallelism;
  opts.seed = config.seed;
  opts.mode = config.template_mode;
  opts.defaults = config.backend.decode;
  opts.journal = dir / "journal.jsonl";
  fs::create_directories(dir);
  auto results = backend::run_eval(set.instances, *backend, opts);

  std::vector<Json> rows;
  std::map<std::string, std::size_t> anomalies;
  for (const auto& r : results) {
    rows.push_back(result_json(r));
    for (const auto& a : r.second.anomalies) ++anomalies[std::string(codec::to_string(a.kind))];
  }
  const auto file = dir / "results.jsonl";
  write_jsonl(file, rows);
  m.outputs = {file, *opts.journal};
  m.extra = Json{{"instances", results.size()}, {"anomalies", anomalies}};
  write_manifest(config, dir, m);
  return {"evaluated " + std::to_string(results.size()) + " instances with the " + config.backend.kind + " backend",
          m.outputs};
}

// ----------------------------------------------------------------- score

CommandResult cmd_score(const RunConfig& config) {
  const auto in = config.input.value_or(stage_dir(config, "eval") / "results.jsonl");
  const auto dir = stage_dir(config, "score");
  Manifest m{"score", {in}, {}, std::nullopt, Json::object()};
  if (!config.input) m.upstream = stage_dir(config, "eval") / "manifest.json";
  if (!fs::exists(in)) throw Error(ErrorCode::EmptyResults, "no eval results at " + in.string());

  std::map<std::pair<std::string, AtomicKind>, std::vector<metrics::EvalResult>> groups;
  for (const auto& j : read_jsonl(in)) {
    auto r = result_from_json(j);
    groups[{r.first.dataset_id, r.first.kind}].push_back(std::move(r));
  }
  if (groups.empty()) throw Error(ErrorCode::EmptyResults, "eval results at " + in.string() + " are empty");

  Json list = Json::array();
  for (const auto& [key, results] : groups) {
    const auto s = metrics::score_dataset(results);
    std::map<std::string, std::size_t> anomalies;
    for (const auto& r : results)
      for (const auto& a : r.second.anomalies) ++anomalies[std::string(codec::to_string(a.kind))];
    const auto& first = results.front().first;
    list.push_back(Json{{"dataset", key.first},
                        {"task", to_string(first.task)},
                        {"kind", to_string(key.second)},
                        {"lang", to_string(first.lang)},
                        {"micro_f1", s.micro_f1},
                        {"rouge1", s.rouge1},
                        {"rouge2", s.rouge2},
                        {"rougeL", s.rougeL},
                        {"rouge", s.rouge_avg},
                        {"final", s.final},
                        {"tp", s.tp},
                        {"fp", s.fp},
                        {"fn", s.fn},
                        {"instances", s.instances},
                        {"anomalies", anomalies}});
  }
  const auto file = dir / "scores.json";
  write_file(file, dump_pretty(Json{{"scores", list}}));
  m.outputs = {file};
  write_manifest(config, dir, m);
  return {"scored " + std::to_string(list.size()) + " (dataset, atomic kind) groups", m.outputs};
}

// ---------------------------------------------------------------- report

std::vector<metrics::AtomicScore> read_scores(const fs::path& file) {
  if (!fs::exists(file)) throw Error(ErrorCode::EmptyReport, "no scores at " + file.string());
  Json j = Json::parse(read_file(file), nullptr, false);
  if (j.is_discarded() || !j.contains("scores")) throw Error(ErrorCode::MalformedRecord, file.string() + ": bad scores");
  std::vector<metrics::AtomicScore> out;
  try {
    for (const auto& s : j.at("scores")) {
      metrics::AtomicScore a;
      a.dataset_id = s.at("dataset").get<std::string>();
      a.task = parse_task(s.at("task").get<std::string>());
      a.kind = parse_atomic_kind(s.at("kind").get<std::string>());
      a.lang = parse_lang(s.at("lang").get<std::string>());
      a.scores.micro_f1 = s.at("micro_f1").get<double>();
      a.scores.rouge1 = s.at("rouge1").get<double>();
      a.scores.rouge2 = s.at("rouge2").get<double>();
      a.scores.rougeL = s.at("rougeL").get<double>();
      a.scores.rouge_avg = s.at("rouge").get<double>();
      a.scores.final = s.at("final").get<double>();
      a.scores.tp = s.at("tp").get<std::size_t>();
      a.scores.fp = s.at("fp").get<std::size_t>();
      a.scores.fn = s.at("fn").get<std::size_t>();
      a.scores.instances = s.at("instances").get<std::size_t>();
      a.anomalies = s.at("anomalies").get<std::map<std::string, std::size_t>>();
      out.push_back(std::move(a));
    }
  } catch (const Json::exception& e) {
    throw Error(ErrorCode::MalformedRecord, file.string() + ": " + e.what());
  }
  return out;
}

CommandResult cmd_report(const RunConfig& config) {
  const auto in = config.input.value_or(stage_dir(config, "score") / "scores.json");
  const auto dir = stage_dir(config, "report");
  Manifest m{"report", {in}, {}, std::nullopt, Json::object()};
  if (!config.input) m.upstream = stage_dir(config, "score") / "manifest.json";

  const auto report = metrics::aggregate_report(read_scores(in));
  Json columns = Json::object();
  for (auto col : metrics::kReportColumns) {
    auto it = report.tasks.find(std::string(col));
    if (it == report.tasks.end()) {
      columns[std::string(col)] = nullptr;
      continue;
    }
    Json atomic = Json::object();
    for (const auto& [k, v] : it->second.atomic) atomic[std::string(to_string(k))] = v;
    columns[std::string(col)] = Json{{"score", it->second.score}, {"atomic", atomic}};
  }
  const Json out{{"columns", columns}, {"ALL", report.all}, {"anomalies", report.anomalies}};
  write_file(dir / "report.json", dump_pretty(out));
  const auto table = metrics::render_table(report);
  write_file(dir / "report.txt", table);
  m.outputs = {dir / "report.json", dir / "report.txt"};
  write_manifest(config, dir, m);
  return {table, m.outputs};
}

}  // namespace

std::vector<AtomicInstance> load_eval_instances(const RunConfig& config) { return collect_eval_set(config).instances; }

CommandResult run_command(std::string_view command, const RunConfig& config) {
  config.validate();
  using Fn = CommandResult (*)(const RunConfig&);
  static const std::map<std::string_view, Fn> table{
      {"ingest", cmd_ingest},
      {"translate", cmd_translate},
      {"augment", cmd_augment},
      {"balance", cmd_balance},
      {"emit-train", cmd_emit_train},
      {"gen-pt-prompts", cmd_gen_pt_prompts},
      {"parse-pt-responses", cmd_parse_pt_responses},
      {"eval", cmd_eval},
      {"score", cmd_score},
      {"report", cmd_report},
  };
  auto it = table.find(command);
  if (it == table.end()) throw Error(ErrorCode::InvalidArgument, "unknown command '" + std::string(command) + "'");
  return it->second(config);
}

}  // namespace atomnlu::pipeline

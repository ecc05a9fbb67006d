// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "pipeline/pipeline.hpp"
#include "test_support.hpp"
#include "util/digest.hpp"
#include "util/log.hpp"
#include "util/text.hpp"

using namespace atomnlu;
using namespace atomnlu::pipeline;

namespace {

RunConfig fixture_config(const atomnlu_test::TempDir& dir) {
  auto cfg = load_config(atomnlu_test::fixtures_dir() / "pipeline.ini");
  cfg.out = dir / "out";
  return cfg;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Io;
}

Json read_json(const std::filesystem::path& p) { return Json::parse(atomnlu_test::slurp(p)); }

struct QuietLog {
  QuietLog() { log::set_sink([](log::Level, std::string_view) {}); }
  ~QuietLog() { log::set_sink(nullptr); }
};

}  // namespace

TEST_CASE("loading the fixture configuration") {
  auto cfg = load_config(atomnlu_test::fixtures_dir() / "pipeline.ini");
  CHECK(cfg.registry == atomnlu_test::fixtures_dir() / "registry.json");
  CHECK(cfg.seed == 20240501);
  CHECK(cfg.eval_roles == std::set<DatasetRole>{DatasetRole::HeldIn, DatasetRole::HeldOut});
  CHECK(cfg.balance.exempt_tasks == std::set<TaskKind>{TaskKind::SA, TaskKind::NLI});
  CHECK(cfg.augmentation.m_neg == 21);
  CHECK(cfg.backend.decode.beam_width == 4);
  CHECK_NOTHROW(cfg.validate());
  auto j = cfg.to_json();
  CHECK_FALSE(j.contains("out"));
  CHECK(j.dump().find("parallelism") == std::string::npos);
}

TEST_CASE("config setters validate their values") {
  RunConfig cfg;
  cfg.set("run.seed", "7");
  CHECK(cfg.seed == 7);
  cfg.set("run.segment_separator", "tab");
  CHECK(cfg.segment_separator == "\t");
  cfg.set("run.segment_separator", "\\s||\\s");
  CHECK(cfg.segment_separator == " || ");
  cfg.set("decode.stop", "\\n\\n");
  CHECK(cfg.backend.decode.stop_sequences == std::vector<std::string>{"\n\n"});
  cfg.set("retry.attempts", "5");
  CHECK(cfg.backend.http.retry.attempts == 5);
  CHECK(code_of([&] { cfg.set("run.colour", "blue"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { cfg.set("run.seed", "seven"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { cfg.set("run.parallelism", "-1"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { cfg.set("run.template", "fancy"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { cfg.set("run.eval_roles", "held_in, nowhere"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { cfg.set("balance.exempt_tasks", "POS"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { cfg.set("decode.temperature", "warm"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { cfg.set("seed", "1"); }) == ErrorCode::InvalidConfig);
  CHECK(config_keys().size() > 30);
}

TEST_CASE("config validation") {
  atomnlu_test::TempDir dir;
  auto base = fixture_config(dir);
  auto cfg = base;
  cfg.parallelism = 0;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::InvalidConfig);
  cfg = base;
  cfg.backend.kind = "telepathy";
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::InvalidConfig);
  cfg = base;
  cfg.backend.kind = "http";
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::InvalidConfig);
  cfg.backend.http.base_url = "http://127.0.0.1:1";
  CHECK_NOTHROW(cfg.validate());
  cfg = base;
  cfg.backend.kind = "subprocess";
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::InvalidConfig);
  cfg = base;
  cfg.backend.scramble_fraction = 1.5;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::InvalidConfig);
  cfg = base;
  cfg.registry = dir / "missing.json";
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::Io);
  cfg = base;
  cfg.augmentation.k = 0;
  CHECK(code_of([&] { cfg.validate(); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("config files reject unknown keys and stray settings") {
  atomnlu_test::TempDir dir;
  atomnlu_test::spit(dir / "a.ini", "[run]\nseed = 3\nwat = 1\n");
  CHECK(code_of([&] { load_config(dir / "a.ini"); }) == ErrorCode::InvalidConfig);
  atomnlu_test::spit(dir / "b.ini", "seed = 3\n");
  CHECK(code_of([&] { load_config(dir / "b.ini"); }) == ErrorCode::InvalidConfig);
  atomnlu_test::spit(dir / "c.ini", "[run\n");
  CHECK(code_of([&] { load_config(dir / "c.ini"); }) == ErrorCode::InvalidConfig);
  CHECK(code_of([&] { load_config(dir / "none.ini"); }) == ErrorCode::Io);
  atomnlu_test::spit(dir / "d.ini", "[run]\nregistry = data/reg.json\nout = build-out\n");
  auto cfg = load_config(dir / "d.ini");
  CHECK(cfg.registry == dir / "data/reg.json");
  CHECK(cfg.out == dir / "build-out");
}

TEST_CASE("unknown commands and missing upstream stages") {
  atomnlu_test::TempDir dir;
  auto cfg = fixture_config(dir);
  CHECK(code_of([&] { run_command("train", cfg); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { run_command("translate", cfg); }) == ErrorCode::Io);
  CHECK(code_of([&] { run_command("score", cfg); }) == ErrorCode::EmptyResults);
  CHECK(code_of([&] { run_command("report", cfg); }) == ErrorCode::EmptyReport);
  atomnlu_test::spit(dir / "out/eval/results.jsonl", "");
  CHECK(code_of([&] { run_command("score", cfg); }) == ErrorCode::EmptyResults);
}

TEST_CASE("the full pipeline writes chained manifests") {
  QuietLog quiet;
  atomnlu_test::TempDir dir;
  auto cfg = fixture_config(dir);
  const std::vector<std::pair<std::string, std::string>> stages{
      {"ingest", ""},           {"translate", "ingest"}, {"augment", "translate"}, {"balance", "augment"},
      {"emit-train", "balance"}, {"eval", ""},            {"score", "eval"},        {"report", "score"}};
  for (const auto& [cmd, up] : stages) {
    CAPTURE(cmd);
    auto r = run_command(cmd, cfg);
    CHECK_FALSE(r.summary.empty());
    auto dir_name = cmd == "emit-train" ? std::string("train/finetune") : cmd;
    auto manifest = read_json(cfg.out / dir_name / "manifest.json");
    CHECK(manifest["command"] == cmd);
    CHECK(manifest["seed"] == cfg.seed);
    if (!up.empty()) {
      REQUIRE(manifest.contains("upstream"));
      CHECK(manifest["upstream"]["path"] == up + "/manifest.json");
      CHECK(manifest["upstream"]["sha256"] == util::file_sha256(cfg.out / up / "manifest.json"));
    }
    for (const auto& o : manifest["outputs"]) {
      auto p = cfg.out / o["path"].get<std::string>();
      CHECK(std::filesystem::exists(p));
      CHECK(o["sha256"] == util::file_sha256(p));
    }
  }
  auto report = read_json(cfg.out / "report/report.json");
  CHECK(report["ALL"].get<double>() == doctest::Approx(100.0).epsilon(1e-12));
  for (auto& [col, v] : report["columns"].items()) CHECK(v["score"].get<double>() == doctest::Approx(100.0));
  CHECK(report["columns"].size() == 10);

  auto sidecar = read_json(cfg.out / "train/finetune/trainer.json");
  CHECK(sidecar == training_sidecar(augment::Stage::Finetune));
  CHECK(sidecar["per_model_size"]["7B1"]["grad_accumulation"] == 128);
  auto records = util::split_lines(atomnlu_test::slurp(cfg.out / "train/finetune/records.jsonl"));
  REQUIRE(records.size() > 1);
  auto first = Json::parse(records[0]);
  CHECK(first["prompt"].get<std::string>().rfind("输入: ", 0) == 0);
  CHECK(first.contains("completion"));

  auto eval_instances = load_eval_instances(cfg);
  CHECK_FALSE(eval_instances.empty());
}

TEST_CASE("eval honours role and split filters") {
  QuietLog quiet;
  atomnlu_test::TempDir dir;
  auto cfg = fixture_config(dir);
  cfg.eval_roles = {DatasetRole::HeldOut};
  for (const auto& inst : load_eval_instances(cfg)) CHECK(inst.dataset_id.find("-zh-") != std::string::npos);
  cfg.eval_split = "nonexistent";
  CHECK(code_of([&] { load_eval_instances(cfg); }) == ErrorCode::InvalidConfig);
}

TEST_CASE("the pretraining corpus flow") {
  QuietLog quiet;
  atomnlu_test::TempDir dir;
  auto cfg = fixture_config(dir);
  cfg.input = atomnlu_test::fixtures_dir() / "pt/passages.jsonl";
  run_command("gen-pt-prompts", cfg);
  auto prompts = util::split_lines(atomnlu_test::slurp(cfg.out / "pt-prompts/prompts.jsonl"));
  CHECK(std::count_if(prompts.begin(), prompts.end(), [](const auto& l) { return !l.empty(); }) == 8);

  cfg.input = atomnlu_test::fixtures_dir() / "pt/responses.jsonl";
  auto r = run_command("parse-pt-responses", cfg);
  CHECK_FALSE(r.summary.empty());
  CHECK(atomnlu_test::slurp(cfg.out / "pt-corpus/stats.txt").find("NER") != std::string::npos);
  auto rejected = util::split_lines(atomnlu_test::slurp(cfg.out / "pt-corpus/rejected.jsonl"));
  CHECK(std::count_if(rejected.begin(), rejected.end(), [](const auto& l) { return !l.empty(); }) == 2);
  auto stats = read_json(cfg.out / "pt-corpus/stats.json");
  CHECK(stats.contains("rows"));

  cfg.input.reset();
  cfg.stage = augment::Stage::Pretrain;
  run_command("emit-train", cfg);
  CHECK(std::filesystem::exists(cfg.out / "train/pretrain/records.jsonl"));
  CHECK(read_json(cfg.out / "train/pretrain/trainer.json")["stage"] == "pretrain");
}

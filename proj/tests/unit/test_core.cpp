// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "core/ingest.hpp"
#include "core/json_io.hpp"
#include "core/sampling.hpp"
#include "core/task_text.hpp"
#include "core/translate.hpp"
#include "test_support.hpp"
#include "util/log.hpp"

using namespace atomnlu;

namespace {

DatasetDescriptor descriptor(const std::string& id, TaskKind task, Lang lang = Lang::En) {
  DatasetDescriptor d;
  d.dataset_id = id;
  d.task = task;
  d.lang = lang;
  return d;
}

std::string line(const Json& j) { return dump_line(j) + "\n"; }

Json ner_record(const std::string& id, const std::string& text, Json gold) {
  return Json{{"id", id}, {"dataset", "ner"}, {"task", "NER"}, {"lang", "en"}, {"text", text},
              {"gold", {{"extractions", gold}}}};
}

RawSample sample(TaskKind task, Lang lang = Lang::En) {
  RawSample s;
  s.id = "s1";
  s.dataset_id = "ds";
  s.task = task;
  s.lang = lang;
  s.text = "some text";
  return s;
}

}  // namespace

TEST_CASE("task kinds round-trip through their names") {
  for (auto t : kAllTasks) CHECK(parse_task(to_string(t)) == t);
  CHECK(parse_task("MRC-MC") == TaskKind::MRC_MC);
  CHECK_THROWS_AS(parse_task("POS"), Error);
  CHECK(report_column(TaskKind::MRC_SE) == "MRC");
  CHECK(report_column(TaskKind::MRC_MC) == "MRC");
  CHECK(report_column(TaskKind::NER) == "NER");
}

TEST_CASE("answer sets validate their invariants") {
  CHECK_THROWS_AS(AnswerSet::classification({"a", "a"}).validate(), Error);
  CHECK_THROWS_AS(AnswerSet::extraction({{"q", {"x", "x"}}}).validate(), Error);
  CHECK_THROWS_AS(AnswerSet::extraction({{"q", {"x"}}, {"q", {"y"}}}).validate(), Error);
  auto ex = AnswerSet::extraction({{"q", {"x"}}, {"r", {}}});
  CHECK(ex.positives() == std::vector<std::string>{"q"});
  CHECK(ex.spans("r")->empty());
  CHECK(ex.spans("missing") == nullptr);
}

TEST_CASE("equivalence ignores order and treats absent queries as empty") {
  CHECK(equivalent(AnswerSet::classification({"a", "b"}), AnswerSet::classification({"b", "a"})));
  CHECK_FALSE(equivalent(AnswerSet::classification({"a"}), AnswerSet::classification({"a", "b"})));
  CHECK(equivalent(AnswerSet::extraction({{"q", {"x", "y"}}, {"r", {}}}), AnswerSet::extraction({{"q", {"y", "x"}}})));
  CHECK_FALSE(equivalent(AnswerSet::classification({}), AnswerSet::extraction({})));
}

TEST_CASE("atomic instance invariants") {
  AtomicInstance inst;
  inst.id = "x";
  inst.kind = AtomicKind::Classification;
  inst.candidates = {"a", "b"};
  inst.gold = AnswerSet::classification({"a"});
  CHECK_NOTHROW(inst.validate());
  inst.gold = AnswerSet::classification({"c"});
  CHECK_THROWS_AS(inst.validate(), Error);
  inst.gold = AnswerSet::classification({});
  inst.candidates = {};
  try {
    inst.validate();
    FAIL("expected EmptyCandidates");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyCandidates);
  }
  inst.candidates = {"a", "a"};
  CHECK_THROWS_AS(inst.validate(), Error);
  inst.candidates = {"a"};
  inst.gold = AnswerSet::extraction({});
  CHECK_THROWS_AS(inst.validate(), Error);
  inst.kind = AtomicKind::Extraction;
  inst.gold = AnswerSet::extraction({{"b", {"x"}}});
  CHECK_THROWS_AS(inst.validate(), Error);
}

TEST_CASE("ingest accepts a well-formed NER file and extends the universe") {
  auto d = descriptor("ner", TaskKind::NER);
  d.label_universe = {"country"};
  std::string content = line(ner_record("1", "Alan Turing .", {{"person", {"Alan Turing"}}})) +
                        line(ner_record("2", "In Paris .", {{"city", {"Paris"}}})) +
                        line(ner_record("3", "Nothing here .", Json::object()));
  auto r = ingest_text(content, d);
  CHECK(r.ok());
  CHECK(r.samples.size() == 3);
  CHECK(d.label_universe == std::vector<std::string>{"country", "person", "city"});
}

TEST_CASE("ingest reports a task mismatch with its line") {
  auto d = descriptor("ner", TaskKind::CLS);
  auto r = ingest_text(line(ner_record("1", "Alan Turing .", {{"person", {"Alan Turing"}}})), d);
  REQUIRE(r.issues.size() == 1);
  CHECK(r.issues[0].code == ErrorCode::TaskMismatch);
  CHECK(r.issues[0].line == 1);
}

TEST_CASE("ingest reports duplicate ids with both line numbers") {
  auto d = descriptor("ner", TaskKind::NER);
  std::string content;
  for (int i = 1; i <= 5; ++i) {
    std::string id = (i == 2 || i == 5) ? "dup" : "id" + std::to_string(i);
    content += line(ner_record(id, "text " + std::to_string(i), Json::object()));
  }
  auto r = ingest_text(content, d);
  REQUIRE(r.issues.size() == 1);
  CHECK(r.issues[0].code == ErrorCode::DuplicateId);
  CHECK(r.issues[0].line == 5);
  CHECK(r.issues[0].related_line == 2);
  CHECK(r.issues[0].message.find("lines 2 and 5") != std::string::npos);
  CHECK(r.samples.size() == 4);
}

TEST_CASE("ingest rejects malformed lines but keeps going") {
  auto d = descriptor("ner", TaskKind::NER);
  std::string content = "{not json\n" + line(ner_record("1", "ok .", Json::object())) +
                        line(Json{{"id", "2"}, {"dataset", "ner"}, {"task", "NER"}, {"lang", "en"}}) +
                        line(ner_record("3", "   ", Json::object())) +
                        line(ner_record("4", "other .", {{"a: b", {"x"}}}));
  auto r = ingest_text(content, d);
  CHECK(r.samples.size() == 1);
  REQUIRE(r.issues.size() == 4);
  CHECK(r.issues[0].code == ErrorCode::MalformedRecord);
  CHECK(r.issues[1].code == ErrorCode::MissingField);
  CHECK(r.issues[2].code == ErrorCode::MalformedRecord);
  CHECK(r.issues[3].code == ErrorCode::MalformedRecord);
  CHECK(r.issues[0].line == 1);
  CHECK(r.issues[3].line == 5);
}

TEST_CASE("ingest rejects records of another dataset or language") {
  auto d = descriptor("other", TaskKind::NER);
  CHECK(ingest_text(line(ner_record("1", "t", Json::object())), d).issues.size() == 1);
  auto zh = descriptor("ner", TaskKind::NER, Lang::Zh);
  CHECK(ingest_text(line(ner_record("1", "t", Json::object())), zh).issues.size() == 1);
}

TEST_CASE("normalization enforces task-specific fields") {
  auto nli = sample(TaskKind::NLI);
  nli.gold = AnswerSet::classification({"entailment"});
  try {
    normalize_sample(nli);
    FAIL("expected MissingField");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingField);
  }
  auto et = sample(TaskKind::ET);
  et.gold = AnswerSet::classification({"person"});
  CHECK_THROWS_AS(normalize_sample(et), Error);
  auto cls = sample(TaskKind::CLS);
  cls.gold = AnswerSet::classification({"a"});
  cls.mention = "m";
  CHECK_THROWS_AS(normalize_sample(cls), Error);
  auto ee = sample(TaskKind::EE);
  ee.gold = AnswerSet::classification({"x"});
  CHECK_THROWS_AS(normalize_sample(ee), Error);
  auto ner = sample(TaskKind::NER);
  CHECK_THROWS_AS(normalize_sample(ner), Error);
}

TEST_CASE("normalization trims, dedupes and strips option markers") {
  auto mc = sample(TaskKind::MRC_MC);
  mc.options = {"(A) rubbing it", "(B) seeing it", "（C）hearing it"};
  mc.gold = AnswerSet::classification({" (A) rubbing it "});
  normalize_sample(mc);
  CHECK(mc.options == std::vector<std::string>{"rubbing it", "seeing it", "hearing it"});
  CHECK(mc.gold->labels == std::vector<std::string>{"rubbing it"});

  auto bad = sample(TaskKind::MRC_MC);
  bad.options = {"(A) one", "(B) two"};
  bad.gold = AnswerSet::classification({"three"});
  CHECK_THROWS_AS(normalize_sample(bad), Error);

  auto ner = sample(TaskKind::NER);
  ner.gold = AnswerSet::extraction({{" person ", {"Ann", " Ann "}}, {"person", {"Bob"}}});
  normalize_sample(ner);
  CHECK(ner.gold->extractions == Extractions{{"person", {"Ann", "Bob"}}});
}

TEST_CASE("grammar checks reject reserved words and separators") {
  CHECK_THROWS_AS(check_label("None"), Error);
  CHECK_THROWS_AS(check_label("a, b"), Error);
  CHECK_THROWS_AS(check_label("甲，乙"), Error);
  CHECK_THROWS_AS(check_label("two\nlines"), Error);
  CHECK_NOTHROW(check_label("Justice/Trial-Hearing"));
  CHECK_THROWS_AS(check_query("time: now"), Error);
  CHECK_THROWS_AS(check_query("时间：现在"), Error);
  CHECK_NOTHROW(check_query("5:15"));
  CHECK_THROWS_AS(check_span("a\tb"), Error);
  CHECK_NOTHROW(check_span("5:15 pm"));
  CHECK(strip_option_marker("(A) rubbing it") == "rubbing it");
  CHECK(strip_option_marker("(AB) x") == "(AB) x");
  CHECK(strip_option_marker("（B）麻雀") == "麻雀");
}

TEST_CASE("registry loading resolves paths and ingests every split") {
  atomnlu_test::TempDir dir;
  atomnlu_test::spit(dir / "data/train.jsonl", line(ner_record("1", "Alan Turing .", {{"person", {"Alan Turing"}}})) +
                                                   line(ner_record("2", "dup id across splits", Json::object())));
  atomnlu_test::spit(dir / "data/test.jsonl", line(ner_record("2", "In Paris .", {{"city", {"Paris"}}})));
  atomnlu_test::spit(dir / "registry.json",
                     dump_pretty(Json{{"datasets",
                                       {{{"dataset_id", "ner"},
                                         {"task", "NER"},
                                         {"lang", "en"},
                                         {"role", "held_out"},
                                         {"paths", {{"train", "data/train.jsonl"}, {"test", "data/test.jsonl"}}}}}}}));
  auto regs = load_registry(dir.path());
  REQUIRE(regs.size() == 1);
  CHECK(regs[0].role == DatasetRole::HeldOut);
  auto di = ingest_dataset(regs[0]);
  REQUIRE(di.issues.size() == 1);
  CHECK(di.issues[0].second.code == ErrorCode::DuplicateId);
  CHECK(regs[0].split_sizes.at("train") == 1);
  CHECK(regs[0].split_sizes.at("test") == 1);
  CHECK(regs[0].label_universe == std::vector<std::string>{"city", "person"});
}

TEST_CASE("registry rejects duplicate datasets and bad roles") {
  atomnlu_test::TempDir dir;
  Json d{{"dataset_id", "a"}, {"task", "CLS"}, {"lang", "en"}, {"role", "held_in"}, {"paths", {{"train", "x"}}}};
  atomnlu_test::spit(dir / "r.json", dump_pretty(Json::array({d, d})));
  CHECK_THROWS_AS(load_registry(dir / "r.json"), Error);
  d["role"] = "training";
  atomnlu_test::spit(dir / "r2.json", dump_pretty(Json::array({d})));
  CHECK_THROWS_AS(load_registry(dir / "r2.json"), Error);
}

TEST_CASE("json round-trip of samples and instances") {
  auto s = sample(TaskKind::EE, Lang::Zh);
  s.triggers = {Trigger{"亡", "生活/死亡", {{"死者", "两人"}}}};
  CHECK(raw_sample_from_json(to_json(s)) == s);
  auto re = sample(TaskKind::RE);
  re.relations = {Relation{"A", "B", "founder_of"}};
  CHECK(raw_sample_from_json(to_json(re)) == re);
  auto compact = raw_sample_from_json(
      Json::parse(R"({"id":"1","dataset":"d","task":"RE","lang":"en","text":"t","relations":[["A","B","r"]]})"));
  CHECK(compact.relations == std::vector<Relation>{{"A", "B", "r"}});

  AtomicInstance inst;
  inst.id = "d/1/EXT/0";
  inst.source_id = "1";
  inst.dataset_id = "d";
  inst.task = TaskKind::SF;
  inst.kind = AtomicKind::Extraction;
  inst.lang = Lang::Zh;
  inst.input_text = "给我放白龙马";
  inst.candidates = {"操作", "歌曲名"};
  inst.gold = AnswerSet::extraction({{"操作", {"放"}}, {"歌曲名", {"白龙马"}}});
  CHECK(instance_from_json(to_json(inst)) == inst);
  CHECK_THROWS_AS(answer_from_json(Json::parse(R"({"labels":[],"extractions":{}})")), Error);
}

TEST_CASE("translate single-atomic tasks") {
  DatasetSchema schema{Lang::En, {"entailment", "neutral", "contradiction"}, {}};
  auto nli = sample(TaskKind::NLI);
  nli.text = "premise";
  nli.text2 = "hypothesis";
  nli.gold = AnswerSet::classification({"neutral"});
  auto out = translate_sample(nli, schema);
  REQUIRE(out.size() == 1);
  CHECK(out[0].input_text == "premise\thypothesis");
  CHECK(out[0].kind == AtomicKind::Classification);
  CHECK(out[0].id == "ds/s1/CLS/0");
  CHECK(translate_sample(nli, schema, {" || "})[0].input_text == "premise || hypothesis");

  auto lonely = sample(TaskKind::NLI);
  lonely.gold = AnswerSet::classification({"neutral"});
  try {
    translate_sample(lonely, schema);
    FAIL("expected MissingField");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingField);
  }

  auto et = sample(TaskKind::ET, Lang::Zh);
  et.text = "我觉得那些书对我来讲真是太肤浅了，只用一两天，就可以结束一个学期的课程。";
  et.mention = "我";
  et.gold = AnswerSet::classification({"人"});
  auto et_out = translate_sample(et, DatasetSchema{Lang::Zh, {"作家", "人"}, {}});
  CHECK(et_out[0].input_text == et.text + "\t我");

  auto empty_universe = sample(TaskKind::CLS);
  empty_universe.gold = AnswerSet::classification({});
  CHECK_THROWS_AS(translate_sample(empty_universe, DatasetSchema{}), Error);
}

TEST_CASE("translate the NER example") {
  auto ner = sample(TaskKind::NER);
  ner.text = "A frame language is a technology used for knowledge representation in artificial intelligence .";
  ner.gold = AnswerSet::extraction({{"task", {"knowledge representation"}}, {"field", {"artificial intelligence"}}});
  DatasetSchema schema{Lang::En, {}, {"programlang", "country", "researcher", "organisation", "product", "field", "task"}};
  auto out = translate_sample(ner, schema);
  REQUIRE(out.size() == 1);
  CHECK(out[0].kind == AtomicKind::Extraction);
  CHECK(out[0].gold == *ner.gold);
  CHECK(out[0].candidates == schema.queries);
}

TEST_CASE("translate the Chinese event example") {
  auto ee = sample(TaskKind::EE, Lang::Zh);
  ee.text = "给地区冲突带来了新的不祥之兆";
  ee.triggers = {Trigger{"亡", "生活/死亡", {}}};
  const std::vector<std::string> types{"法律/逮捕入狱", "个人/提名", "法律/宣判无罪", "生活/死亡", "个人/选举",
                                       "移动/运输",     "交易/资金流动", "商业/组织终结", "法律/控罪起诉", "法律/赦免",
                                       "生活/结婚",     "法律/引渡",   "法律/罚款",   "法律/审讯",   "冲突/示威",
                                       "商业/宣布破产"};
  auto d = descriptor("ds", TaskKind::EE, Lang::Zh);
  d.label_universe = types;
  auto out = translate_sample(ee, build_schema(d));
  REQUIRE(out.size() == 2);
  CHECK(out[0].kind == AtomicKind::Classification);
  CHECK(out[0].input_text == "给地区冲突带来了新的不祥之兆中亡是什么事件？");
  CHECK(out[0].gold.labels == std::vector<std::string>{"生活/死亡"});
  CHECK(out[0].candidates.size() == 16);
  CHECK(out[1].kind == AtomicKind::Extraction);
  CHECK(out[1].gold.extractions == Extractions{{"生活/死亡事件", {"亡"}}});
}

TEST_CASE("event extraction queries follow the English wording") {
  CHECK(task_text::event_trigger_query(Lang::En, "Justice/Trial-Hearing") == "Justice/Trial-Hearing event");
  CHECK(task_text::event_role_query(Lang::En, "Justice/Trial-Hearing", "Place") ==
        "the Place of event Justice/Trial-Hearing");
  CHECK(task_text::event_question(Lang::En, "T", "x") == "What is the event of x in T？");
  CHECK(task_text::relation_question(Lang::En, "T", "a", "b") == "What is the relation between a and b in T?");
  CHECK(task_text::relation_question(Lang::Zh, "T", "甲", "乙") == "T中甲和乙的关系是什么？");
  CHECK(task_text::relation_object_query(Lang::Zh, "首都") == "首都关系的宾语");
  CHECK(task_text::relation_subject_query(Lang::En, "capital") == "the subject of capital");
}

TEST_CASE("EE and RE emit #triggers + 1 and #pairs + 1 instances") {
  auto d = descriptor("ds", TaskKind::EE);
  d.label_universe = {"Life/Die", "Life/Injure", "Justice/Trial-Hearing"};
  d.event_roles = {{"Justice/Trial-Hearing", {"Place"}}};
  auto ee = sample(TaskKind::EE);
  ee.text = "I live in Redwood City, which they actually moved the trial here a couple months into it";
  ee.triggers = {Trigger{"trial", "Justice/Trial-Hearing", {{"Place", "here"}}}, Trigger{"it", "Justice/Trial-Hearing", {}}};
  auto out = translate_sample(ee, build_schema(d));
  CHECK(out.size() == 3);
  CHECK(out.back().gold.extractions ==
        Extractions{{"Justice/Trial-Hearing event", {"trial", "it"}}, {"the Place of event Justice/Trial-Hearing", {"here"}}});

  auto r = descriptor("ds", TaskKind::RE);
  r.label_universe = {"place_of_birth", "leader_of", "capital"};
  auto re = sample(TaskKind::RE);
  re.relations = {{"Merkel", "Hamburg", "place_of_birth"}, {"Merkel", "Germany", "leader_of"},
                  {"Merkel", "Hamburg", "leader_of"}};
  auto rout = translate_sample(re, build_schema(r));
  REQUIRE(rout.size() == 3);
  CHECK(rout[0].gold.labels == std::vector<std::string>{"place_of_birth", "leader_of"});
  CHECK(rout[1].gold.labels == std::vector<std::string>{"leader_of"});
  const auto& ext = rout[2];
  CHECK(ext.candidates == std::vector<std::string>{"the object of place_of_birth", "the subject of place_of_birth",
                                                   "the object of leader_of", "the subject of leader_of"});
  CHECK(*ext.gold.spans("the object of leader_of") == std::vector<std::string>{"Germany", "Hamburg"});

  auto none = sample(TaskKind::RE);
  auto nout = translate_sample(none, build_schema(r));
  REQUIRE(nout.size() == 1);
  CHECK(nout[0].candidates.size() == 6);
  CHECK(nout[0].gold.positives().empty());
}

TEST_CASE("translation is pure") {
  auto d = descriptor("ds", TaskKind::CLS);
  d.label_universe = {"a", "b"};
  auto s = sample(TaskKind::CLS);
  s.gold = AnswerSet::classification({"b"});
  CHECK(dump_line(to_json(translate_samples({s}, d)[0])) == dump_line(to_json(translate_samples({s}, d)[0])));
}

TEST_CASE("ingest, translate, serialize and read back round-trips") {
  atomnlu_test::TempDir dir;
  auto regs = load_registry(atomnlu_test::fixtures_dir());
  for (auto& d : regs) {
    auto di = ingest_dataset(d);
    REQUIRE(di.issues.empty());
    for (const auto& [split, samples] : di.splits) {
      auto insts = translate_samples(samples, d);
      for (const auto& inst : insts)
        for (const auto& [q, spans] : inst.gold.extractions)
          CHECK(std::find(inst.candidates.begin(), inst.candidates.end(), q) != inst.candidates.end());
      write_instances(dir / "x.jsonl", insts);
      CHECK(read_instances(dir / "x.jsonl") == insts);
    }
  }
}

TEST_CASE("eval sampling") {
  std::vector<AtomicInstance> pool;
  for (int i = 0; i < 500; ++i) {
    AtomicInstance inst;
    inst.id = "d/" + std::to_string(1000 + i);
    pool.push_back(inst);
  }
  auto a = sample_eval_records(pool, 48, 7);
  CHECK(a.size() == 48);
  CHECK(sample_eval_records(pool, 48, 7) == a);
  std::set<std::string> ids;
  for (const auto& x : a) ids.insert(x.id);
  CHECK(ids.size() == 48);

  auto reversed = pool;
  std::reverse(reversed.begin(), reversed.end());
  CHECK(sample_eval_records(reversed, 48, 7) == a);

  int differing = 0;
  for (std::uint64_t s = 0; s < 10; ++s)
    differing += sample_eval_records(pool, 48, 100 + s) != sample_eval_records(pool, 48, 200 + s);
  CHECK(differing == 10);

  std::vector<AtomicInstance> small(pool.begin(), pool.begin() + 30);
  CHECK(sample_eval_records(small, 48, 1).size() == 30);
  CHECK_THROWS_AS(sample_eval_records(pool, 0, 1), Error);

  std::vector<std::string> warnings;
  log::set_sink([&](log::Level, std::string_view m) { warnings.emplace_back(m); });
  CHECK(sample_eval_records({}, 48, 1).empty());
  log::set_sink(nullptr);
  CHECK(warnings.size() == 1);
}

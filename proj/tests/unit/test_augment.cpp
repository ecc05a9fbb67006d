// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <map>
#include <set>

#include "augment/augment.hpp"
#include "generators.hpp"

using namespace atomnlu;
using namespace atomnlu::augment;

namespace {

std::vector<std::string> labels(std::size_t n, const std::string& prefix = "l") {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(prefix + std::to_string(i));
  return out;
}

AtomicInstance cls_instance(const std::string& id, const std::string& ds, TaskKind task,
                            std::vector<std::string> gold, std::vector<std::string> cands) {
  AtomicInstance inst;
  inst.id = id;
  inst.source_id = id;
  inst.dataset_id = ds;
  inst.task = task;
  inst.kind = AtomicKind::Classification;
  inst.input_text = "text " + id;
  inst.candidates = std::move(cands);
  inst.gold = AnswerSet::classification(std::move(gold));
  return inst;
}

bool subset(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::set<std::string> sb(b.begin(), b.end());
  return std::all_of(a.begin(), a.end(), [&](const auto& x) { return sb.count(x) > 0; });
}

}  // namespace

TEST_CASE("negative sampling stays inside the universe and avoids positives") {
  util::Rng rng(5);
  auto universe = labels(30);
  std::vector<std::string> positives{"l1", "l2"};
  for (int i = 0; i < 500; ++i) {
    auto neg = sample_negative_labels(positives, universe, 21, rng);
    CHECK(neg.size() >= 1);
    CHECK(neg.size() <= 21);
    CHECK(subset(neg, universe));
    CHECK(std::set<std::string>(neg.begin(), neg.end()).size() == neg.size());
    for (const auto& p : positives) CHECK(std::find(neg.begin(), neg.end(), p) == neg.end());
  }
  CHECK(sample_negative_labels(positives, universe, 0, rng).empty());
  CHECK(sample_negative_labels({"a"}, {"a"}, 5, rng).empty());
  for (int i = 0; i < 50; ++i) CHECK(sample_negative_labels({}, {"a", "b"}, 21, rng).size() <= 2);
}

TEST_CASE("negative sampling covers the whole draw range") {
  util::Rng rng(9);
  std::set<std::size_t> sizes;
  for (int i = 0; i < 2000; ++i) sizes.insert(sample_negative_labels({}, labels(40), 5, rng).size());
  CHECK(sizes == std::set<std::size_t>{1, 2, 3, 4, 5});
}

TEST_CASE("expansion produces K variants with consistent gold") {
  auto inst = cls_instance("d/1/CLS/0", "d", TaskKind::CLS, {"l0", "l3"}, {"l0", "l3", "l7"});
  auto universe = labels(25);
  AugmentationConfig cfg;
  util::Rng rng(1);
  auto ex = expand_instructions(inst, universe, cfg, rng);
  CHECK_FALSE(ex.no_positives);
  REQUIRE(ex.variants.size() == 3);
  std::set<std::string> ids;
  for (const auto& v : ex.variants) {
    ids.insert(v.id);
    CHECK_NOTHROW(v.validate());
    CHECK_FALSE(v.gold.labels.empty());
    CHECK(subset(v.gold.labels, inst.gold.labels));
    CHECK(subset(v.candidates, universe));
    CHECK(v.input_text == inst.input_text);
  }
  CHECK(ids.size() == 3);
}

TEST_CASE("instances without positives pass through unchanged") {
  auto inst = cls_instance("d/1/CLS/0", "d", TaskKind::CLS, {}, {"l0", "l1"});
  util::Rng rng(1);
  auto ex = expand_instructions(inst, labels(5), AugmentationConfig{}, rng);
  CHECK(ex.no_positives);
  REQUIRE(ex.variants.size() == 1);
  CHECK(ex.variants[0] == inst);
}

TEST_CASE("augmentation config validation") {
  AugmentationConfig cfg;
  cfg.k = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  cfg = {};
  cfg.m_pos = 0;
  CHECK_THROWS_AS(cfg.validate(), Error);
  BalanceConfig b;
  b.n_balance = 0;
  CHECK_THROWS_AS(b.validate(), Error);
}

TEST_CASE("property: expansion bounds hold for random instances") {
  util::Rng gen(31);
  AugmentationConfig cfg{4, 3, 5, 0};
  for (std::size_t i = 0; i < 400; ++i) {
    auto kind = i % 2 ? AtomicKind::Extraction : AtomicKind::Classification;
    auto inst = atomnlu_test::random_instance(gen, kind, i % 3 ? Lang::En : Lang::Zh, i);
    auto universe = inst.candidates;
    for (const auto& extra : atomnlu_test::distinct(gen, gen.uniform(0, 10), false, Lang::En))
      util::append_unique(universe, std::vector<std::string>{extra});
    auto positives = inst.gold.positives();
    util::Rng rng(i);
    auto ex = expand_instructions(inst, universe, cfg, rng);
    if (positives.empty()) {
      CHECK(ex.variants.size() == 1);
      continue;
    }
    REQUIRE(ex.variants.size() == cfg.k);
    for (const auto& v : ex.variants) {
      auto vp = v.gold.positives();
      CHECK(vp.size() >= 1);
      CHECK(vp.size() <= cfg.m_pos);
      CHECK(subset(vp, positives));
      CHECK(subset(vp, v.candidates));
      std::size_t negatives = v.candidates.size() - vp.size();
      CHECK(negatives <= cfg.m_neg);
      CHECK(subset(v.candidates, universe));
      for (const auto& c : v.candidates)
        if (std::find(vp.begin(), vp.end(), c) == vp.end())
          CHECK(std::find(positives.begin(), positives.end(), c) == positives.end());
      for (const auto& [q, spans] : v.gold.extractions) CHECK(spans == *inst.gold.spans(q));
    }
  }
}

TEST_CASE("corpus expansion is independent of thread count") {
  util::Rng gen(3);
  std::vector<AtomicInstance> insts;
  for (std::size_t i = 0; i < 200; ++i)
    insts.push_back(atomnlu_test::random_instance(gen, AtomicKind::Classification, Lang::En, i));
  UniverseLookup universes;
  AugmentationConfig cfg;
  cfg.seed = 11;
  auto one = expand_corpus(insts, universes, cfg, 1);
  auto eight = expand_corpus(insts, universes, cfg, 8);
  CHECK(one.instances == eight.instances);
  CHECK(one.no_positive_count == eight.no_positive_count);
  cfg.seed = 12;
  CHECK(expand_corpus(insts, universes, cfg, 1).instances != one.instances);
  CHECK(expand_corpus({}, universes, cfg, 4).instances.empty());
}

TEST_CASE("balancing caps labels and leaves exempt tasks alone") {
  std::vector<AtomicInstance> insts;
  for (int i = 0; i < 700; ++i)
    insts.push_back(cls_instance("a" + std::to_string(i), "cls", TaskKind::CLS, {"A"}, {"A", "B"}));
  for (int i = 0; i < 120; ++i)
    insts.push_back(cls_instance("b" + std::to_string(i), "cls", TaskKind::CLS, {"B"}, {"A", "B"}));
  for (int i = 0; i < 900; ++i)
    insts.push_back(cls_instance("s" + std::to_string(i), "sa", TaskKind::SA, {"positive"}, {"positive", "negative"}));
  for (int i = 0; i < 10; ++i)
    insts.push_back(cls_instance("n" + std::to_string(i), "cls", TaskKind::CLS, {}, {"A", "B"}));
  util::Rng rng(4);
  auto r = balance_corpus(insts, BalanceConfig{}, rng);
  auto count = [&](const std::string& prefix) {
    return std::count_if(r.kept.begin(), r.kept.end(), [&](const auto& x) { return x.id.rfind(prefix, 0) == 0; });
  };
  CHECK(count("a") == 500);
  CHECK(count("b") == 120);
  CHECK(count("s") == 900);
  CHECK(count("n") == 10);
  CHECK(r.retention.at({"cls", "A"}).before == 700);
  CHECK(r.retention.at({"cls", "A"}).after == 500);
  CHECK(r.retention.at({"cls", "B"}).after == 120);
  CHECK(r.retention.count({"sa", "positive"}) == 0);
  std::map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < insts.size(); ++i) position[insts[i].id] = i;
  for (std::size_t i = 1; i < r.kept.size(); ++i) CHECK(position[r.kept[i - 1].id] < position[r.kept[i].id]);
}

TEST_CASE("balancing keeps a multi-label instance while any label is under quota") {
  std::vector<AtomicInstance> insts;
  for (int i = 0; i < 5; ++i)
    insts.push_back(cls_instance("x" + std::to_string(i), "d", TaskKind::CLS, {"A", "B"}, {"A", "B"}));
  for (int i = 0; i < 5; ++i)
    insts.push_back(cls_instance("y" + std::to_string(i), "d", TaskKind::CLS, {"A"}, {"A", "B"}));
  util::Rng rng(8);
  auto r = balance_corpus(insts, BalanceConfig{3, {}}, rng);
  CHECK(r.retention.at({"d", "B"}).after == 3);
  CHECK(r.retention.at({"d", "A"}).after >= 3);
  CHECK(r.kept.size() >= 3);
}

TEST_CASE("training records pair prompts with gold completions") {
  auto inst = cls_instance("d/1", "d", TaskKind::CLS, {"B"}, {"A", "B"});
  auto recs = emit_training_records({inst}, codec::TemplateMode::LanguageAgnostic, Stage::Pretrain);
  REQUIRE(recs.size() == 1);
  CHECK(recs[0].prompt == "输入: text d/1\n分类: A, B\n输出:");
  CHECK(recs[0].completion == "B");
  CHECK(recs[0].stage == Stage::Pretrain);
  CHECK(parse_stage(to_string(Stage::Finetune)) == Stage::Finetune);
  CHECK_THROWS_AS(parse_stage("midtrain"), Error);
}

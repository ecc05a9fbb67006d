// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "ptgen/ptgen.hpp"
#include "util/text.hpp"

namespace atomnlu::ptgen {
namespace {

constexpr std::string_view kClsEn =
    "You are asked to do the following 3 tasks: text classification, sentiment analysis, intent detection. "
    "Here are the requirements: 1. The text should be classified into at least 5 categories, separated by \"/\". "
    "2. Sentiment should be in one of positive, negative or neutral. 3. The intent should contain at most 2 "
    "words describing what the text wants to do. 4. The output should be in json format. 5. Do not return the "
    "original text. ";

constexpr std::string_view kClsZh =
    "我们要对下面这句话做3个任务：文本分类、情感分析、意图识别。要求：1. 至少预测5个类别，类别之间用/分割。 "
    "2. 情感分类通常分为正向、负向和中性三类。3. 意图识别只用两个词概括，不要输出其他内容。 "
    "4. 结果使用json格式返回。";

constexpr std::string_view kEntityEn =
    "Given the following text, identify all fine-grained entities and assign no less than three entity types "
    "to each entity. ";

constexpr std::string_view kEntityZh = "给定下面文本，识别所有细粒度实体，并对每个实体打标不少于三个实体类型。";

}  // namespace

std::string_view to_string(PtKind k) { return k == PtKind::ClsBundle ? "cls_bundle" : "entity_bundle"; }

PtKind parse_pt_kind(std::string_view s) {
  if (s == "cls_bundle" || s == "cls") return PtKind::ClsBundle;
  if (s == "entity_bundle" || s == "entity") return PtKind::EntityBundle;
  throw Error(ErrorCode::InvalidArgument, "unknown PT prompt kind '" + std::string(s) + "'");
}

PtGenerationPrompt build_pt_prompt(PtKind kind, Lang lang, std::string_view text) {
  if (util::trim(text).empty()) throw Error(ErrorCode::InvalidArgument, "PT generation needs a non-empty passage");
  PtGenerationPrompt p{kind, lang, std::string(text), {}};
  if (kind == PtKind::ClsBundle)
    p.rendered = std::string(lang == Lang::En ? kClsEn : kClsZh);
  else
    p.rendered = std::string(lang == Lang::En ? kEntityEn : kEntityZh);
  if (lang == Lang::En)
    p.rendered.append("\"").append(text).append("\"");
  else
    p.rendered.append("“").append(text).append("”");
  return p;
}

}  // namespace atomnlu::ptgen

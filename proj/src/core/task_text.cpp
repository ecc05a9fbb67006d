// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "core/task_text.hpp"

namespace atomnlu::task_text {
namespace {

std::string cat(std::initializer_list<std::string_view> parts) {
  std::string out;
  for (auto p : parts) out.append(p);
  return out;
}

}  // namespace

std::string event_question(Lang lang, std::string_view text, std::string_view trigger) {
  if (lang == Lang::Zh) return cat({text, "中", trigger, "是什么事件？"});
  return cat({"What is the event of ", trigger, " in ", text, "？"});
}

std::string relation_question(Lang lang, std::string_view text, std::string_view subject, std::string_view object) {
  if (lang == Lang::Zh) return cat({text, "中", subject, "和", object, "的关系是什么？"});
  return cat({"What is the relation between ", subject, " and ", object, " in ", text, "?"});
}

std::string event_trigger_query(Lang lang, std::string_view event_type) {
  if (lang == Lang::Zh) return cat({event_type, "事件"});
  return cat({event_type, " event"});
}

std::string event_role_query(Lang lang, std::string_view event_type, std::string_view role) {
  if (lang == Lang::Zh) return cat({event_type, "事件的", role});
  return cat({"the ", role, " of event ", event_type});
}

std::string relation_object_query(Lang lang, std::string_view relation) {
  if (lang == Lang::Zh) return cat({relation, "关系的宾语"});
  return cat({"the object of ", relation});
}

std::string relation_subject_query(Lang lang, std::string_view relation) {
  if (lang == Lang::Zh) return cat({relation, "关系的主语"});
  return cat({"the subject of ", relation});
}

}  // namespace atomnlu::task_text

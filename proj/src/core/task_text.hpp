// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>

#include "core/types.hpp"

// Task-specific input and query wording for the multi-atomic tasks.
namespace atomnlu::task_text {

std::string event_question(Lang lang, std::string_view text, std::string_view trigger);
std::string relation_question(Lang lang, std::string_view text, std::string_view subject, std::string_view object);

std::string event_trigger_query(Lang lang, std::string_view event_type);
std::string event_role_query(Lang lang, std::string_view event_type, std::string_view role);

std::string relation_object_query(Lang lang, std::string_view relation);
std::string relation_subject_query(Lang lang, std::string_view relation);

}  // namespace atomnlu::task_text

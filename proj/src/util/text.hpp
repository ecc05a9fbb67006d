// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace atomnlu::util {

std::string_view trim(std::string_view s);
std::string trim_copy(std::string_view s);

/// Splits on every occurrence of sep. Keeps empty pieces.
std::vector<std::string> split(std::string_view s, std::string_view sep);

/// Splits on any of the given separators, leftmost match first.
std::vector<std::string> split_any(std::string_view s, const std::vector<std::string_view>& seps);

std::vector<std::string> split_lines(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

bool contains(std::string_view s, std::string_view needle);

/// UTF-8 code points as separate strings. Invalid bytes become single-byte pieces.
std::vector<std::string> utf8_codepoints(std::string_view s);

bool is_valid_utf8(std::string_view s);

std::string ascii_lower(std::string_view s);

/// Appends items not already present, preserving first-seen order.
void append_unique(std::vector<std::string>& dst, const std::vector<std::string>& items);
void append_unique(std::vector<std::string>& dst, const std::string& item);

}  // namespace atomnlu::util

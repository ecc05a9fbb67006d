// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <cctype>

#include "metrics/metrics.hpp"
#include "util/text.hpp"

namespace atomnlu::metrics {
namespace {

bool is_space(unsigned char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }
bool is_ascii_punct(unsigned char c) { return c < 0x80 && std::ispunct(c); }

}  // namespace

std::vector<std::string> tokenize(std::string_view text, Lang lang) {
  std::vector<std::string> out;
  if (lang == Lang::Zh) {
    for (auto& cp : util::utf8_codepoints(text))
      if (!(cp.size() == 1 && is_space(static_cast<unsigned char>(cp[0])))) out.push_back(std::move(cp));
    return out;
  }
  std::string cur;
  for (char ch : text) {
    auto c = static_cast<unsigned char>(ch);
    if (is_space(c) || is_ascii_punct(c)) {
      if (!cur.empty()) out.push_back(std::move(cur));
      cur.clear();
      continue;
    }
    cur.push_back(c >= 'A' && c <= 'Z' ? static_cast<char>(c - 'A' + 'a') : ch);
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

}  // namespace atomnlu::metrics

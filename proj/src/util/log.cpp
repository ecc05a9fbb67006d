// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include "util/log.hpp"

#include <atomic>
#include <iostream>
#include <mutex>

namespace atomnlu::log {
namespace {

std::mutex g_mutex;
Sink g_sink;
std::atomic<Level> g_level{Level::Warn};

const char* tag(Level l) {
  switch (l) {
    case Level::Debug: return "debug";
    case Level::Info: return "info";
    case Level::Warn: return "warn";
    case Level::Error: return "error";
    default: return "";
  }
}

}  // namespace

void set_sink(Sink sink) {
  std::lock_guard lock(g_mutex);
  g_sink = std::move(sink);
}

void set_level(Level l) { g_level = l; }
Level level() { return g_level; }

void write(Level l, std::string_view message) {
  if (l < g_level.load()) return;
  std::lock_guard lock(g_mutex);
  if (g_sink) {
    g_sink(l, message);
    return;
  }
  std::cerr << "[atomnlu:" << tag(l) << "] " << message << '\n';
}

}  // namespace atomnlu::log

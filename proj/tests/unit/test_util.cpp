// SPDX-FileCopyrightText: (c) 2026 The atomnlu Authors
//
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <set>

#include "test_support.hpp"
#include "util/digest.hpp"
#include "util/log.hpp"
#include "util/rng.hpp"
#include "util/text.hpp"

using namespace atomnlu;

TEST_CASE("sha256 matches the standard test vectors") {
  CHECK(util::sha256_hex("") == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
  CHECK(util::sha256_hex("abc") == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("file digest equals the digest of the file bytes") {
  atomnlu_test::TempDir dir;
  atomnlu_test::spit(dir / "f.txt", "abc");
  CHECK(util::file_sha256(dir / "f.txt") == util::sha256_hex("abc"));
  CHECK_THROWS_AS(util::file_sha256(dir / "missing"), std::runtime_error);
}

TEST_CASE("trim and split helpers") {
  CHECK(util::trim("  a b \t\n") == "a b");
  CHECK(util::trim("") == "");
  CHECK(util::split("a, b, c", ", ") == std::vector<std::string>{"a", "b", "c"});
  CHECK(util::split("", ",") == std::vector<std::string>{""});
  CHECK(util::split_any("a，b, c", {"，", ", "}) == std::vector<std::string>{"a", "b", "c"});
  CHECK(util::split_lines("a\r\nb\n") == std::vector<std::string>{"a", "b", ""});
  CHECK(util::join({"x", "y"}, "\t") == "x\ty");
}

TEST_CASE("utf8 helpers") {
  CHECK(util::utf8_codepoints("生活a") == std::vector<std::string>{"生", "活", "a"});
  CHECK(util::is_valid_utf8("生活"));
  CHECK_FALSE(util::is_valid_utf8(std::string("\xff\xfe")));
  CHECK(util::ascii_lower("Hello 世界") == "hello 世界");
}

TEST_CASE("append_unique keeps first occurrences") {
  std::vector<std::string> v{"a"};
  util::append_unique(v, std::vector<std::string>{"b", "a", "c", "b"});
  CHECK(v == std::vector<std::string>{"a", "b", "c"});
}

TEST_CASE("rng uniform stays in range and covers it") {
  util::Rng rng(7);
  std::set<std::uint64_t> seen;
  for (int i = 0; i < 2000; ++i) {
    auto v = rng.uniform(3, 9);
    REQUIRE(v >= 3);
    REQUIRE(v <= 9);
    seen.insert(v);
  }
  CHECK(seen.size() == 7);
  CHECK(rng.uniform(5, 5) == 5);
}

TEST_CASE("rng derivations are independent of draw order") {
  util::Rng a(11), b(11);
  b.next();
  b.next();
  CHECK(a.derive("x").next() == b.derive("x").next());
  CHECK(a.derive("x").next() != a.derive("y").next());
  CHECK(util::Rng(1).derive("x").next() != util::Rng(2).derive("x").next());
}

TEST_CASE("sample_indices draws distinct indices") {
  util::Rng rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    auto idx = rng.sample_indices(10, 4);
    std::set<std::size_t> s(idx.begin(), idx.end());
    REQUIRE(s.size() == 4);
    REQUIRE(*s.rbegin() < 10);
  }
  CHECK(rng.sample_indices(3, 3).size() == 3);
  CHECK(rng.sample_indices(0, 0).empty());
}

TEST_CASE("shuffle is a permutation") {
  util::Rng rng(5);
  std::vector<int> v{1, 2, 3, 4, 5, 6};
  rng.shuffle(v);
  std::sort(v.begin(), v.end());
  CHECK(v == std::vector<int>{1, 2, 3, 4, 5, 6});
}

TEST_CASE("log sink receives messages at or above the level") {
  std::vector<std::string> got;
  log::set_sink([&](log::Level, std::string_view m) { got.emplace_back(m); });
  log::set_level(log::Level::Warn);
  log::info("hidden");
  log::warn("shown");
  log::error("also shown");
  log::set_sink(nullptr);
  CHECK(got == std::vector<std::string>{"shown", "also shown"});
}

// tests/test_phone_labels.cpp

// Copyright 2026  SFDI toolkit authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//  http://www.apache.org/licenses/LICENSE-2.0
//
// THIS CODE IS PROVIDED *AS IS* BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY
// KIND, EITHER EXPRESS OR IMPLIED, INCLUDING WITHOUT LIMITATION ANY IMPLIED
// WARRANTIES OR CONDITIONS OF TITLE, FITNESS FOR A PARTICULAR PURPOSE,
// MERCHANTABLITY OR NON-INFRINGEMENT.
// See the Apache 2 License for the specific language governing permissions and
// limitations under the License.

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "sfdi/phone_labels.hpp"

using namespace sfdi;

TEST_CASE("parse_phn reads start/end/symbol triples", "[phn]") {
  const auto labels = parse_phn("0 2000 h#\n2000 4000 s\n");
  REQUIRE(labels.size() == 2);
  CHECK(labels[0] == PhoneLabel{0, 2000, "h#"});
  CHECK(labels[1] == PhoneLabel{2000, 4000, "s"});
}

TEST_CASE("parse_phn accepts empty files and CRLF", "[phn]") {
  CHECK(parse_phn("").empty());
  CHECK(parse_phn("\n\n").empty());

  const auto labels = parse_phn("0 100 aa\r\n100 200 s\r\n");
  REQUIRE(labels.size() == 2);
  CHECK(labels[1].symbol == "s");
}

TEST_CASE("parse_phn rejects bad ordering as InvalidLabels", "[phn]") {
  CHECK_THROWS_AS(parse_phn("2000 1000 s\n"), InvalidLabels);
  CHECK_THROWS_AS(parse_phn("0 100 aa\n50 200 s\n"), InvalidLabels);      // overlap
  CHECK_THROWS_AS(parse_phn("100 200 aa\n0 100 s\n"), InvalidLabels);    // disorder
  CHECK_THROWS_AS(parse_phn("-5 100 aa\n"), InvalidLabels);              // negative
}

TEST_CASE("parse_phn reports malformed lines with their number", "[phn]") {
  try {
    parse_phn("0 100 aa\nnot a triple here at all x\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
  }

  CHECK_THROWS_AS(parse_phn("0 abc s\n"), ParseError);
  CHECK_THROWS_AS(parse_phn("0 100\n"), ParseError);
  CHECK_THROWS_AS(parse_phn("0 100 s extra\n"), ParseError);
}

TEST_CASE("parse and serialize round-trip", "[phn]") {
  const std::string text = "0 1234 h#\n1234 4000 ay\n4000 7500 s\n7500 9000 h#\n";
  CHECK(serialize_phn(parse_phn(text)) == text);
}

TEST_CASE("phone_class follows the shipped map", "[phn]") {
  const PhoneClassMap map = PhoneClassMap::timit_default();
  CHECK(phone_class("s", map) == PhoneClass::Fricative);
  CHECK(phone_class("sh", map) == PhoneClass::Fricative);
  CHECK(phone_class("ch", map) == PhoneClass::Fricative);
  CHECK(phone_class("aa", map) == PhoneClass::Sonorant);
  CHECK(phone_class("m", map) == PhoneClass::Sonorant);
  CHECK(phone_class("hh", map) == PhoneClass::Excluded);
  CHECK(phone_class("dh", map) == PhoneClass::Excluded);
  CHECK(phone_class("th", map) == PhoneClass::Excluded);
  CHECK(phone_class("v", map) == PhoneClass::Excluded);
  CHECK(phone_class("b", map) == PhoneClass::Other);
  CHECK(phone_class("kcl", map) == PhoneClass::Other);
  CHECK(phone_class("h#", map) == PhoneClass::Other);
  CHECK(phone_class("??unknown??", map) == PhoneClass::Other);
}

TEST_CASE("default map keeps classes disjoint", "[phn]") {
  CHECK_NOTHROW(PhoneClassMap::timit_default().validate());
}

TEST_CASE("map file parses and matches the built-in default", "[phn]") {
  const PhoneClassMap from_file = PhoneClassMap::from_file(SFDI_DATA_DIR "/timit_phone_map.txt");
  const PhoneClassMap builtin = PhoneClassMap::timit_default();
  CHECK(from_file.sonorants == builtin.sonorants);
  CHECK(from_file.fricatives == builtin.fricatives);
  CHECK(from_file.excluded == builtin.excluded);
}

TEST_CASE("map parser rejects a symbol in two classes", "[phn]") {
  CHECK_THROWS_AS(PhoneClassMap::parse("s fricative\ns sonorant\n"), InvalidLabels);
  CHECK_THROWS_AS(PhoneClassMap::parse("s what\n"), ParseError);
}

TEST_CASE("label_frames assigns by frame center", "[phn]") {
  FrameSpec spec;  // 20 ms / 5 ms
  const int rate = 16000;

  SECTION("single covering label") {
    const std::vector<PhoneLabel> labels{{0, 16000, "ay"}};
    const auto symbols = label_frames(labels, 197, spec, rate);
    REQUIRE(symbols.size() == 197);
    for (const std::string& s : symbols) CHECK(s == "ay");
  }

  SECTION("half-open boundary: the center sample belongs to the next label") {
    // Frame 0 center sample = 160. Boundary exactly at 160.
    const std::vector<PhoneLabel> labels{{0, 160, "aa"}, {160, 16000, "s"}};
    const auto symbols = label_frames(labels, 197, spec, rate);
    CHECK(symbols[0] == "s");
  }

  SECTION("uncovered frames get the placeholder") {
    const std::vector<PhoneLabel> labels{{0, 200, "aa"}};
    const auto symbols = label_frames(labels, 197, spec, rate);
    CHECK(symbols[0] == "aa");
    for (std::size_t i = 1; i < symbols.size(); ++i) CHECK(symbols[i] == "?");
  }
}

TEST_CASE("label_frames matches a per-sample brute-force lookup", "[phn]") {
  FrameSpec spec;
  const int rate = 16000;
  std::mt19937 gen(321);

  for (int trial = 0; trial < 20; ++trial) {
    // Random partition of 1 s into phone intervals.
    std::vector<PhoneLabel> labels;
    std::int64_t pos = 0;
    int idx = 0;
    while (pos < 16000) {
      const std::int64_t len = 200 + static_cast<std::int64_t>(gen() % 3000);
      const std::int64_t end = std::min<std::int64_t>(16000, pos + len);
      labels.push_back({pos, end, "p" + std::to_string(idx++)});
      pos = end;
    }

    const std::size_t frame_count = 197;
    const auto symbols = label_frames(labels, frame_count, spec, rate);
    REQUIRE(symbols.size() == frame_count);

    // Oracle: linear scan of all labels for each frame center.
    for (std::size_t f = 0; f < frame_count; ++f) {
      const std::int64_t center = static_cast<std::int64_t>(f) * 80 + 160;
      std::string expected = "?";
      for (const PhoneLabel& l : labels)
        if (l.start_sample <= center && center < l.end_sample) expected = l.symbol;
      CHECK(symbols[f] == expected);
    }
  }
}

// sfdi/phone_labels.hpp

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

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "sfdi/errors.hpp"
#include "sfdi/framing.hpp"

namespace sfdi {

/// One ground-truth phone interval in sample units, half-open
/// [start_sample, end_sample).
struct PhoneLabel {
  std::int64_t start_sample = 0;
  std::int64_t end_sample = 0;
  std::string symbol;

  bool operator==(const PhoneLabel&) const = default;
};

/// Parses "start end symbol" lines (TIMIT .phn layout, LF or CRLF).
/// Structural problems raise ParseError with the line number; ordering
/// problems (start >= end, overlap, disorder) raise InvalidLabels.
inline std::vector<PhoneLabel> parse_phn(std::string_view text) {
  std::vector<PhoneLabel> labels;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;

    std::istringstream fl(line);
    std::string start_s, end_s, symbol, extra;
    fl >> start_s >> end_s >> symbol;
    if (symbol.empty()) throw ParseError("expected 'start end symbol'", line_no);
    if (fl >> extra) throw ParseError("trailing field '" + extra + "'", line_no);

    PhoneLabel label;
    try {
      std::size_t used = 0;
      label.start_sample = std::stoll(start_s, &used);
      if (used != start_s.size()) throw std::invalid_argument(start_s);
      label.end_sample = std::stoll(end_s, &used);
      if (used != end_s.size()) throw std::invalid_argument(end_s);
    } catch (const std::exception&) {
      throw ParseError("non-integer boundary in '" + line + "'", line_no);
    }
    label.symbol = symbol;

    if (label.start_sample < 0)
      throw InvalidLabels("line " + std::to_string(line_no) + ": negative start");
    if (label.start_sample >= label.end_sample)
      throw InvalidLabels("line " + std::to_string(line_no) + ": start >= end");
    if (!labels.empty() && label.start_sample < labels.back().end_sample)
      throw InvalidLabels("line " + std::to_string(line_no) +
                          ": labels overlap or are out of order");
    labels.push_back(std::move(label));
  }
  return labels;
}

inline std::string serialize_phn(const std::vector<PhoneLabel>& labels) {
  std::ostringstream out;
  for (const PhoneLabel& l : labels)
    out << l.start_sample << ' ' << l.end_sample << ' ' << l.symbol << '\n';
  return out.str();
}

inline std::vector<PhoneLabel> read_phn_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_phn(ss.str());
}

enum class PhoneClass { Sonorant, Fricative, Excluded, Other };

inline const char* phone_class_name(PhoneClass c) {
  switch (c) {
    case PhoneClass::Sonorant: return "sonorant";
    case PhoneClass::Fricative: return "fricative";
    case PhoneClass::Excluded: return "excluded";
    case PhoneClass::Other: return "other";
  }
  return "other";
}

/// Symbol-to-class assignment. The three explicit sets must stay pairwise
/// disjoint; any symbol in none of them is Other.
struct PhoneClassMap {
  std::unordered_set<std::string> sonorants;
  std::unordered_set<std::string> fricatives;
  std::unordered_set<std::string> excluded;

  void validate() const {
    for (const std::string& s : sonorants)
      if (fricatives.count(s) || excluded.count(s))
        throw InvalidLabels("phone map: symbol '" + s + "' appears in two classes");
    for (const std::string& s : fricatives)
      if (excluded.count(s))
        throw InvalidLabels("phone map: symbol '" + s + "' appears in two classes");
  }

  /// TIMIT inventory defaults: vowels plus semivowels/nasals as sonorants,
  /// the turbulent set plus affricates as fricatives, and the four
  /// anomalous symbols excluded. Stops, closures, flaps, and silence marks
  /// fall through to Other.
  static PhoneClassMap timit_default() {
    PhoneClassMap map;
    map.sonorants = {
        "iy", "ih", "eh", "ey", "ae", "aa", "aw", "ay", "ah", "ao", "oy",
        "ow", "uh", "uw", "ux", "er", "ax", "ix", "axr", "ax-h",
        "l", "r", "w", "y", "el", "m", "n", "ng", "em", "en", "eng", "nx", "hv"};
    map.fricatives = {"s", "sh", "f", "ch", "z", "zh", "jh"};
    map.excluded = {"hh", "th", "dh", "v"};
    return map;
  }

  /// Line-oriented "symbol class" pairs, class in
  /// {sonorant, fricative, excluded, other}.
  static PhoneClassMap parse(std::string_view text) {
    PhoneClassMap map;
    std::istringstream in{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      std::istringstream fl(line);
      std::string symbol, cls, extra;
      fl >> symbol >> cls;
      if (symbol.empty() || symbol[0] == '#') continue;
      if (cls.empty()) throw ParseError("expected 'symbol class'", line_no);
      if (fl >> extra) throw ParseError("trailing field '" + extra + "'", line_no);
      if (cls == "sonorant") map.sonorants.insert(symbol);
      else if (cls == "fricative") map.fricatives.insert(symbol);
      else if (cls == "excluded") map.excluded.insert(symbol);
      else if (cls == "other") { /* explicit Other rows are allowed */ }
      else throw ParseError("unknown class '" + cls + "'", line_no);
    }
    map.validate();
    return map;
  }

  static PhoneClassMap from_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str());
  }
};

inline PhoneClass phone_class(std::string_view symbol, const PhoneClassMap& map) {
  const std::string key(symbol);
  if (map.sonorants.count(key)) return PhoneClass::Sonorant;
  if (map.fricatives.count(key)) return PhoneClass::Fricative;
  if (map.excluded.count(key)) return PhoneClass::Excluded;
  return PhoneClass::Other;
}

/// Assigns each analysis frame the phone whose half-open interval contains
/// the frame's center sample (the midpoint of the middle hop interval).
/// Frames not covered by any label get "?".
inline std::vector<std::string> label_frames(const std::vector<PhoneLabel>& labels,
                                             std::size_t frame_count,
                                             const FrameSpec& spec, int sample_rate_hz) {
  const std::int64_t len = static_cast<std::int64_t>(spec.frame_len_samples(sample_rate_hz));
  const std::int64_t hop = static_cast<std::int64_t>(spec.hop_samples(sample_rate_hz));

  std::vector<std::string> symbols(frame_count, "?");
  std::size_t cursor = 0;
  for (std::size_t f = 0; f < frame_count; ++f) {
    const std::int64_t center = static_cast<std::int64_t>(f) * hop + len / 2;
    while (cursor < labels.size() && labels[cursor].end_sample <= center) ++cursor;
    if (cursor < labels.size() && labels[cursor].start_sample <= center)
      symbols[f] = labels[cursor].symbol;
  }
  return symbols;
}

}  // namespace sfdi

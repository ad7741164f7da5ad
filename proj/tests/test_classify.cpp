// tests/test_classify.cpp

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

#include <cmath>
#include <vector>

#include "helpers/synth.hpp"
#include "sfdi/classify.hpp"

using namespace sfdi;

namespace {

// Hand-built contour: one point per (t_one, energy) pair on a 5 ms grid.
SfdiContour make_contour(const std::vector<std::pair<double, double>>& values) {
  SfdiContour contour;
  contour.hop_ms = 5.0;
  contour.sample_rate_hz = 16000;
  for (std::size_t i = 0; i < values.size(); ++i) {
    ContourPoint p;
    p.frame_index = i;
    p.t_one = values[i].first;
    p.a_one = std::tan(p.t_one);
    p.energy = values[i].second;
    p.center_start_ms = 7.5 + 5.0 * static_cast<double>(i);
    p.center_end_ms = p.center_start_ms + 5.0;
    contour.points.push_back(p);
  }
  return contour;
}

}  // namespace

TEST_CASE("classify_frame decision table at the calibrated threshold", "[classify]") {
  const ClassifierConfig config;
  CHECK(classify_frame(1.3, 1.0, 1.0, config) == FrameClass::Fricative);
  CHECK(classify_frame(1.05, 1.0, 1.0, config) == FrameClass::Sonorant);
  CHECK(classify_frame(1.3, 0.0, 1.0, config) == FrameClass::Silence);
  // A whole-silent utterance gates everything.
  CHECK(classify_frame(1.3, 0.0, 0.0, config) == FrameClass::Silence);
}

TEST_CASE("threshold equality falls to the sonorant class", "[classify]") {
  const ClassifierConfig config;  // threshold_t = 1.1
  const double eps = 1e-9;
  CHECK(classify_frame(1.1 - eps, 1.0, 1.0, config) == FrameClass::Sonorant);
  CHECK(classify_frame(1.1, 1.0, 1.0, config) == FrameClass::Sonorant);
  CHECK(classify_frame(1.1 + eps, 1.0, 1.0, config) == FrameClass::Fricative);
}

TEST_CASE("silence gate is a strict less-than on the energy ratio", "[classify]") {
  ClassifierConfig config;
  config.silence_ratio = 0.0004;
  const double max_energy = 10.0;
  CHECK(classify_frame(0.5, 0.0039999, max_energy, config) == FrameClass::Silence);
  CHECK(classify_frame(0.5, 0.004, max_energy, config) == FrameClass::Sonorant);
}

TEST_CASE("raising the threshold never moves frames toward fricative", "[classify]") {
  const std::vector<double> values{0.1, 0.7, 1.05, 1.1, 1.2, 1.4, 1.55};
  ClassifierConfig low, high;
  low.threshold_t = 0.9;
  high.threshold_t = 1.3;
  for (double t : values) {
    const FrameClass a = classify_frame(t, 1.0, 1.0, low);
    const FrameClass b = classify_frame(t, 1.0, 1.0, high);
    // Only allowed transition is Fricative -> Sonorant.
    if (a == FrameClass::Sonorant) CHECK(b == FrameClass::Sonorant);
  }
}

TEST_CASE("classes are invariant to amplitude scaling", "[classify]") {
  const AudioBuffer base = synth::mixed_utterance(16000, 77);
  AudioBuffer loud = base;
  for (double& s : loud.samples) s *= 37.5;

  const ClassifierConfig config;
  const auto a = classify_contour(sfdi_contour(base, FrameSpec{}), config);
  const auto b = classify_contour(sfdi_contour(loud, FrameSpec{}), config);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) CHECK(a[i] == b[i]);
}

TEST_CASE("segment merges runs and stamps hop-grid boundaries", "[classify]") {
  // classes: S2 S2 S1 S1 Silence (via energies/t_one around threshold 1.1)
  const SfdiContour contour = make_contour({{0.5, 1.0},
                                            {0.6, 1.0},
                                            {1.3, 1.0},
                                            {1.4, 1.0},
                                            {0.2, 0.0}});
  const SegmentationTrace trace = segment(contour, ClassifierConfig{});

  REQUIRE(trace.levels.size() == 5);
  CHECK(trace.levels == std::vector<double>{-0.5, -0.5, 0.5, 0.5, 0.0});

  REQUIRE(trace.segments.size() == 3);
  CHECK(trace.segments[0].cls == FrameClass::Sonorant);
  CHECK(trace.segments[0].start_ms == 7.5);
  CHECK(trace.segments[0].end_ms == 17.5);
  CHECK(trace.segments[1].cls == FrameClass::Fricative);
  CHECK(trace.segments[1].start_ms == 17.5);
  CHECK(trace.segments[1].end_ms == 27.5);
  CHECK(trace.segments[2].cls == FrameClass::Silence);
  CHECK(trace.segments[2].start_ms == 27.5);
  CHECK(trace.segments[2].end_ms == 32.5);
}

TEST_CASE("an all-silent utterance is one silence segment", "[classify]") {
  const SfdiContour contour =
      make_contour({{0.785, 0.0}, {0.785, 0.0}, {0.785, 0.0}, {0.785, 0.0}});
  const SegmentationTrace trace = segment(contour, ClassifierConfig{});
  REQUIRE(trace.segments.size() == 1);
  CHECK(trace.segments[0].cls == FrameClass::Silence);
  CHECK(trace.segments[0].start_ms == contour.points.front().center_start_ms);
  CHECK(trace.segments[0].end_ms == contour.points.back().center_end_ms);
}

TEST_CASE("trace levels and segments reconstruct each other", "[classify]") {
  const AudioBuffer buffer = synth::mixed_utterance(16000, 3);
  const SfdiContour contour = sfdi_contour(buffer, FrameSpec{});
  const ClassifierConfig config;
  const std::vector<FrameClass> classes = classify_contour(contour, config);
  const SegmentationTrace trace = build_trace(classes, contour);

  // levels -> classes -> identical segments
  const std::vector<FrameClass> from_levels = classes_from_levels(trace.levels);
  REQUIRE(from_levels == classes);
  const SegmentationTrace rebuilt = build_trace(from_levels, contour);
  REQUIRE(rebuilt.segments.size() == trace.segments.size());
  for (std::size_t i = 0; i < trace.segments.size(); ++i) {
    CHECK(rebuilt.segments[i].cls == trace.segments[i].cls);
    CHECK(rebuilt.segments[i].start_ms == trace.segments[i].start_ms);
    CHECK(rebuilt.segments[i].end_ms == trace.segments[i].end_ms);
  }

  // segments -> levels: expand each segment over its frames
  std::vector<double> expanded;
  for (const ClassSegment& seg : trace.segments) {
    for (const ContourPoint& p : contour.points) {
      if (p.center_start_ms >= seg.start_ms - 1e-9 && p.center_end_ms <= seg.end_ms + 1e-9)
        expanded.push_back(trace_level(seg.cls));
    }
  }
  CHECK(expanded == trace.levels);
}

TEST_CASE("segmentation finds constructed boundaries", "[classify]") {
  // tone | highpass noise | silence, boundaries at 400 ms and 800 ms.
  const int rate = 16000;
  const AudioBuffer buffer = synth::concat({synth::sonorant_like(rate, 0.4, 120.0, 21),
                                            synth::fricative_like(rate, 0.4, 22),
                                            synth::silence(rate, 0.2)});
  const SfdiContour contour = sfdi_contour(buffer, FrameSpec{});
  const SegmentationTrace trace = segment(contour, ClassifierConfig{});

  REQUIRE(trace.segments.size() >= 3);
  // First three macro segments: sonorant, fricative, silence.
  CHECK(trace.segments[0].cls == FrameClass::Sonorant);

  double son_to_fric = -1.0, fric_to_sil = -1.0;
  for (std::size_t i = 1; i < trace.segments.size(); ++i) {
    if (son_to_fric < 0 && trace.segments[i].cls == FrameClass::Fricative)
      son_to_fric = trace.segments[i].start_ms;
    if (son_to_fric >= 0 && fric_to_sil < 0 && trace.segments[i].cls == FrameClass::Silence)
      fric_to_sil = trace.segments[i].start_ms;
  }
  REQUIRE(son_to_fric >= 0.0);
  REQUIRE(fric_to_sil >= 0.0);
  // Within +-2 frames (10 ms) of the construction points.
  CHECK_THAT(son_to_fric, Catch::Matchers::WithinAbs(400.0, 10.0 + 1e-9));
  CHECK_THAT(fric_to_sil, Catch::Matchers::WithinAbs(800.0, 10.0 + 1e-9));
}

TEST_CASE("majority-vote smoothing removes an isolated flip", "[classify]") {
  SfdiContour contour = make_contour({{0.5, 1.0},
                                      {0.5, 1.0},
                                      {1.4, 1.0},
                                      {0.5, 1.0},
                                      {0.5, 1.0}});
  ClassifierConfig smooth;
  smooth.smoothing_frames = 3;
  const auto classes = classify_contour(contour, smooth);
  for (FrameClass c : classes) CHECK(c == FrameClass::Sonorant);

  // Disabled by default: the flip stays.
  const auto raw = classify_contour(contour, ClassifierConfig{});
  CHECK(raw[2] == FrameClass::Fricative);
}

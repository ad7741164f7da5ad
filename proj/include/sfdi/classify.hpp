// sfdi/classify.hpp

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

#include <algorithm>
#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "sfdi/contour.hpp"
#include "sfdi/errors.hpp"

namespace sfdi {

/// Frame decision. Fricative is class-1 (trace level +0.5), Sonorant is
/// class-2 (trace level -0.5), Silence is the energy-gated level 0.
enum class FrameClass { Fricative, Sonorant, Silence };

inline double trace_level(FrameClass c) {
  switch (c) {
    case FrameClass::Fricative: return 0.5;
    case FrameClass::Sonorant: return -0.5;
    case FrameClass::Silence: return 0.0;
  }
  return 0.0;
}

inline const char* frame_class_name(FrameClass c) {
  switch (c) {
    case FrameClass::Fricative: return "fricative";
    case FrameClass::Sonorant: return "sonorant";
    case FrameClass::Silence: return "silence";
  }
  return "silence";
}

struct ClassifierConfig {
  double threshold_t = 1.1;      // radians
  double silence_ratio = 0.0004; // fraction of the per-utterance max frame energy
  // Majority-vote smoothing over a centered window of this many frames.
  // 0 disables it; the raw trace is the default.
  int smoothing_frames = 0;

  void validate() const {
    if (!(threshold_t > 0.0) || !(threshold_t < 1.5707963267948966))
      throw Error("threshold must lie in (0, pi/2)");
    if (silence_ratio < 0.0 || silence_ratio >= 1.0)
      throw Error("silence_ratio must lie in [0, 1)");
    if (smoothing_frames < 0) throw Error("smoothing_frames must be >= 0");
  }
};

/// Energy gate first, then the threshold: frames with t_one above the
/// threshold go to class-1 (fricative), the rest to class-2 (sonorant).
/// Equality stays with class-2. A whole-utterance max energy of zero means
/// everything is silent.
inline FrameClass classify_frame(double t_one, double energy, double max_energy,
                                 const ClassifierConfig& config) {
  if (!(max_energy > 0.0)) return FrameClass::Silence;
  if (energy < config.silence_ratio * max_energy) return FrameClass::Silence;
  return t_one > config.threshold_t ? FrameClass::Fricative : FrameClass::Sonorant;
}

inline std::vector<FrameClass> classify_contour(const SfdiContour& contour,
                                                const ClassifierConfig& config) {
  config.validate();
  double max_energy = 0.0;
  for (const ContourPoint& p : contour.points) max_energy = std::max(max_energy, p.energy);

  std::vector<FrameClass> classes;
  classes.reserve(contour.points.size());
  for (const ContourPoint& p : contour.points)
    classes.push_back(classify_frame(p.t_one, p.energy, max_energy, config));

  if (config.smoothing_frames > 1) {
    const int half = config.smoothing_frames / 2;
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(classes.size());
    std::vector<FrameClass> smoothed = classes;
    for (std::ptrdiff_t i = 0; i < n; ++i) {
      std::array<int, 3> votes{0, 0, 0};
      const std::ptrdiff_t lo = std::max<std::ptrdiff_t>(0, i - half);
      const std::ptrdiff_t hi = std::min<std::ptrdiff_t>(n - 1, i + half);
      for (std::ptrdiff_t j = lo; j <= hi; ++j)
        ++votes[static_cast<std::size_t>(classes[static_cast<std::size_t>(j)])];
      const int best = static_cast<int>(
          std::max_element(votes.begin(), votes.end()) - votes.begin());
      // A tie keeps the frame's own class.
      if (std::count(votes.begin(), votes.end(), votes[static_cast<std::size_t>(best)]) == 1)
        smoothed[static_cast<std::size_t>(i)] = static_cast<FrameClass>(best);
    }
    classes = std::move(smoothed);
  }
  return classes;
}

struct ClassSegment {
  FrameClass cls = FrameClass::Silence;
  double start_ms = 0.0;
  double end_ms = 0.0;
};

/// Three-level rectangular trace plus the maximal runs it is built from.
/// Levels and segments describe the same decision sequence; either can be
/// rebuilt from the other given the frame grid.
struct SegmentationTrace {
  std::vector<double> levels;          // one of {+0.5, -0.5, 0} per frame
  std::vector<ClassSegment> segments;  // maximal runs, boundaries on the hop grid
};

/// Merges per-frame classes into maximal runs. Boundaries are stamped at
/// the start of the first center interval of each run; the final segment
/// closes at the end of the last frame's center interval.
inline SegmentationTrace build_trace(const std::vector<FrameClass>& classes,
                                     const SfdiContour& contour) {
  SegmentationTrace trace;
  trace.levels.reserve(classes.size());
  for (FrameClass c : classes) trace.levels.push_back(trace_level(c));

  for (std::size_t i = 0; i < classes.size(); ++i) {
    if (trace.segments.empty() || trace.segments.back().cls != classes[i]) {
      ClassSegment seg;
      seg.cls = classes[i];
      seg.start_ms = contour.points[i].center_start_ms;
      seg.end_ms = contour.points[i].center_end_ms;
      trace.segments.push_back(seg);
    } else {
      trace.segments.back().end_ms = contour.points[i].center_end_ms;
    }
  }
  return trace;
}

inline SegmentationTrace segment(const SfdiContour& contour, const ClassifierConfig& config) {
  return build_trace(classify_contour(contour, config), contour);
}

/// Inverse of build_trace's level mapping, for trace round-trips.
inline std::vector<FrameClass> classes_from_levels(const std::vector<double>& levels) {
  std::vector<FrameClass> classes;
  classes.reserve(levels.size());
  for (double v : levels) {
    if (v > 0.0) classes.push_back(FrameClass::Fricative);
    else if (v < 0.0) classes.push_back(FrameClass::Sonorant);
    else classes.push_back(FrameClass::Silence);
  }
  return classes;
}

}  // namespace sfdi

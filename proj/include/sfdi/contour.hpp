// sfdi/contour.hpp

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

#include <cmath>
#include <cstddef>
#include <numbers>
#include <vector>

#include "sfdi/audio.hpp"
#include "sfdi/framing.hpp"
#include "sfdi/lpc.hpp"

namespace sfdi {

/// Per-frame feature sample. The value is assigned to the frame's middle
/// hop interval, so a plot over time looks like a staircase.
struct ContourPoint {
  std::size_t frame_index = 0;
  double a_one = 0.0;
  double t_one = 0.0;   // radians, in (-pi/2, pi/2)
  double energy = 0.0;  // sum of squares of the mean-removed raw frame
  bool degenerate = false;
  double center_start_ms = 0.0;
  double center_end_ms = 0.0;
};

struct SfdiContour {
  std::vector<ContourPoint> points;
  double hop_ms = 0.0;
  int sample_rate_hz = 0;

  std::size_t size() const { return points.size(); }
  bool empty() const { return points.empty(); }
};

/// Full analysis chain per frame: mean removal -> preemphasis -> window ->
/// autocorrelation to the rate-derived order -> Levinson -> a_one/t_one.
/// The energy is taken from the mean-removed frame before preemphasis and
/// windowing, so the silence gate tracks signal level rather than tilt.
///
/// Frames whose windowed autocorrelation has r[0] <= r0_floor carry no
/// usable spectral shape; they are flagged degenerate and reported with the
/// neutral value a_one = 1 (t_one = pi/4). Silence gating is left to the
/// classifier.
inline SfdiContour sfdi_contour(const AudioBuffer& buffer, const FrameSpec& spec,
                                double r0_floor = 0.0) {
  const int order = model_order(buffer.sample_rate_hz);
  const std::size_t frame_len = spec.frame_len_samples(buffer.sample_rate_hz);
  // Order never reaches the frame length at supported rates: a 20 ms frame
  // at F kHz has 20*F samples against order F+2.
  std::vector<Frame> frames = frame_signal(buffer, spec);

  std::vector<double> window;
  if (spec.window == WindowType::Hanning) window = hanning_window(frame_len);

  SfdiContour contour;
  contour.hop_ms = spec.hop_ms;
  contour.sample_rate_hz = buffer.sample_rate_hz;
  contour.points.reserve(frames.size());

  for (Frame& frame : frames) {
    ContourPoint pt;
    pt.frame_index = frame.index;
    pt.center_start_ms = frame.center_start_ms;
    pt.center_end_ms = frame.center_end_ms;

    Frame work = remove_mean(std::move(frame));
    pt.energy = frame_energy(work);
    work = preemphasize(std::move(work), spec.preemphasis_alpha);
    if (!window.empty()) work = apply_window(std::move(work), window);

    AutocorrelationSeq acf =
        autocorrelation(work.samples, static_cast<std::size_t>(order));
    if (!(acf.values[0] > r0_floor)) {
      pt.degenerate = true;
      pt.a_one = 1.0;
      pt.t_one = std::numbers::pi / 4.0;
    } else {
      LpcModel model = levinson_durbin(acf, order);
      pt.a_one = a_one(model);
      pt.t_one = t_one(pt.a_one);
    }
    contour.points.push_back(pt);
  }
  return contour;
}

}  // namespace sfdi

// sfdi/framing.hpp

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
#include <numeric>
#include <span>
#include <string>
#include <vector>

#include "sfdi/audio.hpp"
#include "sfdi/errors.hpp"

namespace sfdi {

enum class WindowType { Hanning, Rectangular };

/// Analysis frame layout. Defaults are 20 ms frames hopped by 5 ms with
/// a 0.97 preemphasis and a Hanning window.
struct FrameSpec {
  double frame_len_ms = 20.0;
  double hop_ms = 5.0;
  double preemphasis_alpha = 0.97;
  WindowType window = WindowType::Hanning;

  std::size_t frame_len_samples(int sample_rate_hz) const {
    return static_cast<std::size_t>(std::llround(frame_len_ms * sample_rate_hz / 1000.0));
  }
  std::size_t hop_samples(int sample_rate_hz) const {
    return static_cast<std::size_t>(std::llround(hop_ms * sample_rate_hz / 1000.0));
  }

  void validate(int sample_rate_hz) const {
    if (sample_rate_hz <= 0)
      throw Error("sample rate must be positive, got " + std::to_string(sample_rate_hz));
    if (!(hop_ms > 0.0) || hop_ms > frame_len_ms)
      throw Error("hop must satisfy 0 < hop_ms <= frame_len_ms");
    if (preemphasis_alpha < 0.0 || preemphasis_alpha >= 1.0)
      throw Error("preemphasis_alpha must lie in [0, 1)");
    if (frame_len_samples(sample_rate_hz) < 2)
      throw Error("frame length must be at least 2 samples");
    if (hop_samples(sample_rate_hz) < 1)
      throw Error("hop must be at least 1 sample");
  }
};

/// One analysis frame. `samples` is a raw copy of the buffer region;
/// `center_*_ms` delimit the middle hop interval the frame's feature value
/// is assigned to.
struct Frame {
  std::size_t index = 0;
  std::size_t start_sample = 0;
  std::vector<double> samples;
  double center_start_ms = 0.0;
  double center_end_ms = 0.0;
};

/// Cuts the buffer into full frames starting at 0, one hop apart. Trailing
/// samples that do not fill a whole frame are dropped.
inline std::vector<Frame> frame_signal(const AudioBuffer& buffer, const FrameSpec& spec) {
  spec.validate(buffer.sample_rate_hz);
  const std::size_t len = spec.frame_len_samples(buffer.sample_rate_hz);
  const std::size_t hop = spec.hop_samples(buffer.sample_rate_hz);
  const std::size_t n = buffer.samples.size();
  if (n < len || n == 0)
    throw EmptySignal("signal shorter than one frame (" + std::to_string(n) + " < " +
                      std::to_string(len) + " samples)");

  const std::size_t count = (n - len) / hop + 1;
  const double ms_per_sample = 1000.0 / buffer.sample_rate_hz;

  std::vector<Frame> frames;
  frames.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    Frame f;
    f.index = i;
    f.start_sample = i * hop;
    f.samples.assign(buffer.samples.begin() + static_cast<std::ptrdiff_t>(f.start_sample),
                     buffer.samples.begin() + static_cast<std::ptrdiff_t>(f.start_sample + len));
    const double mid_lo = static_cast<double>(f.start_sample) + (static_cast<double>(len) - static_cast<double>(hop)) / 2.0;
    f.center_start_ms = mid_lo * ms_per_sample;
    f.center_end_ms = (mid_lo + static_cast<double>(hop)) * ms_per_sample;
    frames.push_back(std::move(f));
  }
  return frames;
}

inline Frame remove_mean(Frame frame) {
  if (frame.samples.empty()) throw EmptySignal("cannot remove mean of an empty frame");
  const double mean =
      std::accumulate(frame.samples.begin(), frame.samples.end(), 0.0) /
      static_cast<double>(frame.samples.size());
  for (double& s : frame.samples) s -= mean;
  return frame;
}

/// First-order highpass y[n] = x[n] - alpha*x[n-1], with y[0] = x[0].
/// No history is carried across frames. The standalone filter accepts the
/// closed range [0, 1]; FrameSpec restricts the analysis pipeline to [0, 1).
inline Frame preemphasize(Frame frame, double alpha) {
  if (alpha < 0.0 || alpha > 1.0) throw Error("preemphasis alpha must lie in [0, 1]");
  double prev = 0.0;
  for (double& s : frame.samples) {
    const double cur = s;
    s = cur - alpha * prev;
    prev = cur;
  }
  return frame;
}

/// Symmetric Hanning coefficients w[n] = 0.5 - 0.5*cos(2*pi*n/(L-1)).
/// The second half mirrors the first, so w[n] == w[L-1-n] holds exactly
/// and both endpoints are exactly zero.
inline std::vector<double> hanning_window(std::size_t length) {
  if (length < 2)
    throw InvalidWindow("window length must be >= 2, got " + std::to_string(length));
  std::vector<double> w(length);
  const double denom = static_cast<double>(length - 1);
  for (std::size_t n = 0; n <= (length - 1) / 2; ++n) {
    const double v = 0.5 - 0.5 * std::cos(2.0 * std::numbers::pi * static_cast<double>(n) / denom);
    w[n] = v;
    w[length - 1 - n] = v;
  }
  return w;
}

inline Frame apply_window(Frame frame, std::span<const double> coeffs) {
  if (coeffs.size() != frame.samples.size())
    throw Error("window length does not match frame length");
  for (std::size_t n = 0; n < coeffs.size(); ++n) frame.samples[n] *= coeffs[n];
  return frame;
}

/// Sum of squared samples. Zero iff the frame is all-zero.
inline double frame_energy(const Frame& frame) {
  if (frame.samples.empty()) throw EmptySignal("cannot compute energy of an empty frame");
  double e = 0.0;
  for (double s : frame.samples) e += s * s;
  return e;
}

}  // namespace sfdi

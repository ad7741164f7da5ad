// tests/helpers/synth.hpp

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

// Deterministic synthetic test signals. The "sonorant-like" generator is a
// harmonic series with a steep lowpass rolloff; the "fricative-like" one is
// twice-differenced white noise, which is strongly highpass.

#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "sfdi/audio.hpp"
#include "sfdi/phone_labels.hpp"

namespace synth {

inline std::vector<double> uniform_noise(std::size_t count, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> out(count);
  for (double& v : out)
    v = 2.0 * (static_cast<double>(gen() >> 11) * 0x1.0p-53) - 1.0;
  return out;
}

inline void scale_to_rms(std::vector<double>& samples, double target_rms) {
  double power = 0.0;
  for (double s : samples) power += s * s;
  if (power <= 0.0) return;
  const double rms = std::sqrt(power / static_cast<double>(samples.size()));
  for (double& s : samples) s *= target_rms / rms;
}

/// Harmonic series of f0 with 1/h^2 amplitudes up to 3 kHz (or just below
/// Nyquist), random phases. Spectrally lowpass like a voiced sound.
inline sfdi::AudioBuffer sonorant_like(int rate, double duration_s, double f0,
                                       std::uint64_t seed, double rms = 0.2) {
  std::mt19937_64 gen(seed);
  const std::size_t n = static_cast<std::size_t>(duration_s * rate);
  const double nyquist_cap = std::min(3000.0, 0.45 * rate);
  const int harmonics = std::max(1, static_cast<int>(nyquist_cap / f0));

  std::vector<double> phases(static_cast<std::size_t>(harmonics));
  for (double& p : phases)
    p = 2.0 * std::numbers::pi * (static_cast<double>(gen() >> 11) * 0x1.0p-53);

  sfdi::AudioBuffer buffer;
  buffer.sample_rate_hz = rate;
  buffer.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = static_cast<double>(i) / rate;
    double v = 0.0;
    for (int h = 1; h <= harmonics; ++h)
      v += std::sin(2.0 * std::numbers::pi * f0 * h * t + phases[static_cast<std::size_t>(h - 1)]) /
           static_cast<double>(h * h);
    buffer.samples[i] = v;
  }
  scale_to_rms(buffer.samples, rms);
  return buffer;
}

/// Twice-differenced white noise: power spectrum ~ sin^4(w/2), strongly
/// highpass like a turbulent sound.
inline sfdi::AudioBuffer fricative_like(int rate, double duration_s, std::uint64_t seed,
                                        double rms = 0.2) {
  const std::size_t n = static_cast<std::size_t>(duration_s * rate);
  std::vector<double> noise = uniform_noise(n + 2, seed);
  sfdi::AudioBuffer buffer;
  buffer.sample_rate_hz = rate;
  buffer.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    buffer.samples[i] = noise[i + 2] - 2.0 * noise[i + 1] + noise[i];
  scale_to_rms(buffer.samples, rms);
  return buffer;
}

inline sfdi::AudioBuffer silence(int rate, double duration_s) {
  sfdi::AudioBuffer buffer;
  buffer.sample_rate_hz = rate;
  buffer.samples.assign(static_cast<std::size_t>(duration_s * rate), 0.0);
  return buffer;
}

inline sfdi::AudioBuffer concat(const std::vector<sfdi::AudioBuffer>& parts) {
  sfdi::AudioBuffer out;
  out.sample_rate_hz = parts.empty() ? 0 : parts.front().sample_rate_hz;
  for (const sfdi::AudioBuffer& p : parts)
    out.samples.insert(out.samples.end(), p.samples.begin(), p.samples.end());
  return out;
}

/// A labeled utterance: silence | sonorant | fricative | silence, with the
/// ground-truth sample boundaries recorded as phone labels.
struct LabeledUtterance {
  sfdi::AudioBuffer audio;
  std::vector<sfdi::PhoneLabel> labels;
};

inline LabeledUtterance labeled_utterance(int rate, std::uint64_t seed,
                                          double lead_s = 0.1, double son_s = 0.6,
                                          double fric_s = 0.5, double tail_s = 0.1) {
  const double f0 = 100.0 + static_cast<double>(seed % 7) * 15.0;
  const sfdi::AudioBuffer lead = silence(rate, lead_s);
  const sfdi::AudioBuffer son = sonorant_like(rate, son_s, f0, seed * 2 + 1);
  const sfdi::AudioBuffer fric = fricative_like(rate, fric_s, seed * 2 + 2);
  const sfdi::AudioBuffer tail = silence(rate, tail_s);

  LabeledUtterance utt;
  utt.audio = concat({lead, son, fric, tail});
  std::int64_t pos = 0;
  auto push = [&](std::int64_t len, const std::string& symbol) {
    if (len > 0) utt.labels.push_back({pos, pos + len, symbol});
    pos += len;
  };
  push(static_cast<std::int64_t>(lead.samples.size()), "h#");
  push(static_cast<std::int64_t>(son.samples.size()), "aa");
  push(static_cast<std::int64_t>(fric.samples.size()), "s");
  push(static_cast<std::int64_t>(tail.samples.size()), "h#");
  return utt;
}

/// Random mixed utterance for stability-style suites: 3..6 segments drawn
/// from {sonorant-like, fricative-like, silence} at varied amplitudes.
inline sfdi::AudioBuffer mixed_utterance(int rate, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(gen() >> 11) * 0x1.0p-53);
  };
  const int segments = 3 + static_cast<int>(gen() % 4);
  std::vector<sfdi::AudioBuffer> parts;
  for (int s = 0; s < segments; ++s) {
    const double dur = uniform(0.1, 0.35);
    const std::uint64_t part_seed = gen();
    switch (gen() % 3) {
      case 0:
        parts.push_back(sonorant_like(rate, dur, uniform(80.0, 220.0), part_seed,
                                      uniform(0.05, 0.6)));
        break;
      case 1:
        parts.push_back(fricative_like(rate, dur, part_seed, uniform(0.05, 0.6)));
        break;
      default:
        parts.push_back(silence(rate, dur));
        break;
    }
  }
  return concat(parts);
}

}  // namespace synth

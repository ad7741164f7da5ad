// sfdi/noise.hpp

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
#include <cstdint>
#include <limits>
#include <numbers>
#include <random>
#include <string_view>

#include "sfdi/audio.hpp"
#include "sfdi/corpus.hpp"
#include "sfdi/errors.hpp"

namespace sfdi {

/// Additive white Gaussian noise request. An infinite target SNR is the
/// "clean" flag value and leaves the signal untouched.
struct NoiseSpec {
  double target_snr_db = std::numeric_limits<double>::infinity();
  std::uint64_t rng_seed = 0;

  bool is_clean() const { return std::isinf(target_snr_db) && target_snr_db > 0.0; }
};

/// Unit-variance Gaussian draws via Box-Muller over mt19937_64. The
/// mt19937_64 stream is pinned by the standard, so a fixed seed yields the
/// same noise on every platform (std::normal_distribution does not promise
/// that).
class GaussianRng {
 public:
  explicit GaussianRng(std::uint64_t seed) : gen_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1] keeps the log finite; u2 in [0, 1).
    const double u1 = 1.0 - uniform01();
    const double u2 = uniform01();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    have_spare_ = true;
    return radius * std::cos(angle);
  }

 private:
  double uniform01() {
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 gen_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Per-file seed derived from the master seed and the file path, so a
/// corpus run reproduces exactly no matter how files are ordered or
/// distributed over workers.
inline std::uint64_t derive_file_seed(std::uint64_t master_seed, std::string_view path) {
  char master_bytes[8];
  for (int i = 0; i < 8; ++i)
    master_bytes[i] = static_cast<char>((master_seed >> (8 * i)) & 0xff);
  return fnv1a64(path, fnv1a64(std::string_view(master_bytes, 8)));
}

/// Adds seeded white Gaussian noise scaled so that
/// 10*log10(P_signal / P_noise) equals the target over the full utterance.
/// The scale uses the realized noise power, so the target holds by
/// construction up to rounding.
inline AudioBuffer add_white_noise(const AudioBuffer& buffer, const NoiseSpec& spec) {
  if (spec.is_clean()) return buffer;

  double signal_power = 0.0;
  for (double s : buffer.samples) signal_power += s * s;
  if (!(signal_power > 0.0))
    throw ZeroSignalPower("cannot set an SNR against a zero-power signal");

  GaussianRng rng(spec.rng_seed);
  std::vector<double> noise(buffer.samples.size());
  double noise_power = 0.0;
  for (double& n : noise) {
    n = rng();
    noise_power += n * n;
  }
  if (!(noise_power > 0.0))
    throw NumericalBreakdown("generated noise has zero power");

  const double gain =
      std::sqrt(signal_power * std::pow(10.0, -spec.target_snr_db / 10.0) / noise_power);

  AudioBuffer noisy = buffer;
  for (std::size_t i = 0; i < noisy.samples.size(); ++i)
    noisy.samples[i] += gain * noise[i];
  return noisy;
}

/// Realized SNR of a noisy buffer against its clean original, in dB.
inline double measure_snr_db(const AudioBuffer& clean, const AudioBuffer& noisy) {
  if (clean.samples.size() != noisy.samples.size())
    throw Error("measure_snr_db: buffer sizes differ");
  double signal_power = 0.0, noise_power = 0.0;
  for (std::size_t i = 0; i < clean.samples.size(); ++i) {
    signal_power += clean.samples[i] * clean.samples[i];
    const double d = noisy.samples[i] - clean.samples[i];
    noise_power += d * d;
  }
  if (!(noise_power > 0.0)) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(signal_power / noise_power);
}

}  // namespace sfdi

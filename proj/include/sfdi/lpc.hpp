// sfdi/lpc.hpp

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
#include <span>
#include <string>
#include <vector>

#include "sfdi/errors.hpp"

namespace sfdi {

/// Autocorrelation sequence r[0..max_lag], biased estimator
/// r[k] = sum_n x[n]*x[n+k] (no per-lag normalization).
struct AutocorrelationSeq {
  std::vector<double> values;

  std::size_t max_lag() const { return values.empty() ? 0 : values.size() - 1; }
};

/// All-pole model of a frame. The inverse filter is
/// A(z) = 1 + a1*z^-1 + ... + aM*z^-M with `coefficients` = a1..aM.
/// |k_i| < 1 for every reflection coefficient certifies that all roots of
/// A(z) lie strictly inside the unit circle.
struct LpcModel {
  int order = 0;
  std::vector<double> coefficients;
  double residual_energy = 0.0;
  std::vector<double> reflection_coefficients;
};

/// Prediction order rule: sampling frequency in kHz (rounded to the
/// nearest integer) plus two. 16 kHz -> 18, 8 kHz -> 10.
inline int model_order(int sample_rate_hz) {
  if (sample_rate_hz < 1000)
    throw UnsupportedRate("sample rate below 1 kHz: " + std::to_string(sample_rate_hz));
  const int fs_khz = static_cast<int>(std::llround(sample_rate_hz / 1000.0));
  return fs_khz + 2;
}

inline AutocorrelationSeq autocorrelation(std::span<const double> samples,
                                          std::size_t max_lag) {
  if (max_lag >= samples.size())
    throw InvalidLag("max_lag " + std::to_string(max_lag) + " >= signal length " +
                     std::to_string(samples.size()));
  AutocorrelationSeq acf;
  acf.values.resize(max_lag + 1);
  const std::size_t n = samples.size();
  for (std::size_t k = 0; k <= max_lag; ++k) {
    double sum = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) sum += samples[i] * samples[i + k];
    acf.values[k] = sum;
  }
  return acf;
}

/// Levinson-Durbin recursion for the order-M autocorrelation normal
/// equations sum_j a_j r(|i-j|) = -r(i), i = 1..M.
///
/// residual_energy comes out as r[0] * prod(1 - k_i^2). A prediction error
/// that hits zero or a non-finite value aborts the recursion: the
/// autocorrelation is numerically rank-deficient at that order.
inline LpcModel levinson_durbin(const AutocorrelationSeq& acf, int order) {
  if (order < 1) throw Error("prediction order must be >= 1");
  if (acf.values.size() < static_cast<std::size_t>(order) + 1)
    throw Error("autocorrelation has " + std::to_string(acf.values.size()) +
                " lags, order " + std::to_string(order) + " needs " +
                std::to_string(order + 1));
  const std::vector<double>& r = acf.values;
  if (!(r[0] > 0.0))
    throw DegenerateFrame("zero-energy autocorrelation (r[0] <= 0)");

  LpcModel model;
  model.order = order;
  model.coefficients.assign(static_cast<std::size_t>(order), 0.0);
  model.reflection_coefficients.reserve(static_cast<std::size_t>(order));
  std::vector<double>& a = model.coefficients;

  double err = r[0];
  std::vector<double> prev(a.size());
  for (int i = 1; i <= order; ++i) {
    double acc = r[static_cast<std::size_t>(i)];
    for (int j = 1; j < i; ++j)
      acc += a[static_cast<std::size_t>(j - 1)] * r[static_cast<std::size_t>(i - j)];
    const double k = -acc / err;
    if (!std::isfinite(k))
      throw NumericalBreakdown("non-finite reflection coefficient at order " +
                               std::to_string(i));
    model.reflection_coefficients.push_back(k);

    prev = a;
    a[static_cast<std::size_t>(i - 1)] = k;
    for (int j = 1; j < i; ++j)
      a[static_cast<std::size_t>(j - 1)] =
          prev[static_cast<std::size_t>(j - 1)] + k * prev[static_cast<std::size_t>(i - j - 1)];

    err *= 1.0 - k * k;
    if (!(err > 0.0) || !std::isfinite(err))
      throw NumericalBreakdown("prediction error collapsed at order " + std::to_string(i) +
                               " (1 - k^2 <= 0 numerically)");
  }
  model.residual_energy = err;
  return model;
}

/// Inverse-filter gain at zero frequency: 1 + sum of the LPCs,
/// summed left to right.
inline double a_one(const LpcModel& model) {
  double sum = 1.0;
  for (double c : model.coefficients) sum += c;
  return sum;
}

/// Range compression of a_one onto (-pi/2, pi/2).
inline double t_one(double a1) { return std::atan(a1); }

}  // namespace sfdi

// sfdi/eval.hpp

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
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <span>
#include <string>
#include <thread>
#include <vector>

#include "sfdi/audio_io.hpp"
#include "sfdi/classify.hpp"
#include "sfdi/contour.hpp"
#include "sfdi/corpus.hpp"
#include "sfdi/noise.hpp"
#include "sfdi/phone_labels.hpp"

namespace sfdi {

struct EvalOptions {
  FrameSpec frame_spec;
  double silence_ratio = 0.0004;
  double r0_floor = 0.0;
  int jobs = 1;
  NoiseSpec noise;  // clean unless a finite target SNR is set
};

struct FileFailure {
  std::string path;
  std::string message;
};

/// Pooled t_one values of ground-truth sonorant and fricative frames.
struct ClassPools {
  std::vector<double> sonorant;
  std::vector<double> fricative;
  std::size_t files_processed = 0;
  std::vector<FileFailure> failures;

  std::size_t total_frames() const { return sonorant.size() + fricative.size(); }
};

namespace detail {

template <typename Fn>
inline void parallel_for(std::size_t count, int jobs, Fn&& fn) {
  if (jobs <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  const int workers = static_cast<int>(
      std::min<std::size_t>(count, static_cast<std::size_t>(jobs)));
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  pool.reserve(static_cast<std::size_t>(workers));
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&]() {
      while (true) {
        const std::size_t i = next.fetch_add(1);
        if (i >= count) return;
        fn(i);
      }
    });
  }
  for (std::thread& t : pool) t.join();
}

struct PerFilePools {
  std::vector<double> sonorant;
  std::vector<double> fricative;
  bool ok = false;
  std::string error;
};

inline PerFilePools analyze_entry(const CorpusEntry& entry, const PhoneClassMap& map,
                                  const EvalOptions& options) {
  PerFilePools out;
  try {
    AudioBuffer buffer = read_audio(entry.audio_path);
    if (!options.noise.is_clean()) {
      NoiseSpec file_noise = options.noise;
      file_noise.rng_seed =
          derive_file_seed(options.noise.rng_seed, entry.audio_path.string());
      buffer = add_white_noise(buffer, file_noise);
    }
    const SfdiContour contour =
        sfdi_contour(buffer, options.frame_spec, options.r0_floor);
    const std::vector<PhoneLabel> labels = read_phn_file(entry.label_path);
    const std::vector<std::string> symbols = label_frames(
        labels, contour.size(), options.frame_spec, buffer.sample_rate_hz);

    double max_energy = 0.0;
    for (const ContourPoint& p : contour.points)
      max_energy = std::max(max_energy, p.energy);

    for (std::size_t i = 0; i < contour.points.size(); ++i) {
      const ContourPoint& p = contour.points[i];
      if (!(max_energy > 0.0)) break;  // whole utterance silent
      if (p.energy < options.silence_ratio * max_energy) continue;
      switch (phone_class(symbols[i], map)) {
        case PhoneClass::Sonorant: out.sonorant.push_back(p.t_one); break;
        case PhoneClass::Fricative: out.fricative.push_back(p.t_one); break;
        default: break;  // excluded, other, uncovered
      }
    }
    out.ok = true;
  } catch (const std::exception& e) {
    out.error = e.what();
  }
  return out;
}

inline std::vector<PerFilePools> collect_per_file(const std::vector<CorpusEntry>& entries,
                                                  const PhoneClassMap& map,
                                                  const EvalOptions& options) {
  std::vector<PerFilePools> results(entries.size());
  parallel_for(entries.size(), options.jobs, [&](std::size_t i) {
    results[i] = analyze_entry(entries[i], map, options);
  });
  return results;
}

inline ClassPools merge_pools(const std::vector<CorpusEntry>& entries,
                              const std::vector<PerFilePools>& per_file,
                              bool dev_only) {
  ClassPools pools;
  for (std::size_t i = 0; i < per_file.size(); ++i) {
    if (dev_only && entries[i].split != SplitTag::Dev) continue;
    const PerFilePools& f = per_file[i];
    if (!f.ok) {
      if (!dev_only)
        pools.failures.push_back({entries[i].audio_path.string(), f.error});
      continue;
    }
    ++pools.files_processed;
    pools.sonorant.insert(pools.sonorant.end(), f.sonorant.begin(), f.sonorant.end());
    pools.fricative.insert(pools.fricative.end(), f.fricative.begin(), f.fricative.end());
  }
  return pools;
}

}  // namespace detail

/// Analyzes every corpus entry and pools t_one by ground-truth class.
/// Frames below the silence gate, frames of excluded or unmapped phones,
/// and frames not covered by a label are skipped. A file that fails to
/// read is recorded and the run continues.
inline ClassPools collect_sfdi_by_class(const std::vector<CorpusEntry>& entries,
                                        const PhoneClassMap& map,
                                        const EvalOptions& options) {
  return detail::merge_pools(entries, detail::collect_per_file(entries, map, options),
                             /*dev_only=*/false);
}

/// Fixed-grid histogram anchored at 0, spanning [0, pi/2). Values outside
/// the span land in the nearest edge bin so per-class mass is conserved.
struct Histogram {
  double bin_width = 0.025;
  std::vector<double> bin_edges;       // bin i covers [edges[i], edges[i+1])
  std::vector<std::size_t> counts;
  std::vector<double> normalized;      // counts / total class frames
  std::size_t total = 0;
};

inline Histogram make_histogram(std::span<const double> values, double bin_width) {
  if (!(bin_width > 0.0)) throw Error("bin width must be positive");
  const double upper = std::numbers::pi / 2.0;
  const std::size_t nbins =
      static_cast<std::size_t>(std::ceil(upper / bin_width - 1e-12));

  Histogram h;
  h.bin_width = bin_width;
  h.bin_edges.resize(nbins + 1);
  for (std::size_t i = 0; i <= nbins; ++i)
    h.bin_edges[i] = static_cast<double>(i) * bin_width;
  h.counts.assign(nbins, 0);
  h.total = values.size();
  for (double v : values) {
    std::ptrdiff_t idx = static_cast<std::ptrdiff_t>(std::floor(v / bin_width));
    idx = std::clamp<std::ptrdiff_t>(idx, 0, static_cast<std::ptrdiff_t>(nbins) - 1);
    ++h.counts[static_cast<std::size_t>(idx)];
  }
  h.normalized.resize(nbins);
  for (std::size_t i = 0; i < nbins; ++i)
    h.normalized[i] =
        h.total == 0 ? 0.0
                     : static_cast<double>(h.counts[i]) / static_cast<double>(h.total);
  return h;
}

inline std::pair<Histogram, Histogram> class_histograms(const ClassPools& pools,
                                                        double bin_width = 0.025) {
  return {make_histogram(pools.sonorant, bin_width),
          make_histogram(pools.fricative, bin_width)};
}

/// Overlap mass of two per-class histograms on the shared grid:
/// sum over bins of min(normalized_a, normalized_b). 0 means fully
/// separated classes, 1 means identical distributions.
inline double histogram_overlap(const Histogram& a, const Histogram& b) {
  if (a.counts.size() != b.counts.size() || a.bin_width != b.bin_width)
    throw Error("histogram_overlap: grids differ");
  double overlap = 0.0;
  for (std::size_t i = 0; i < a.normalized.size(); ++i)
    overlap += std::min(a.normalized[i], b.normalized[i]);
  return overlap;
}

/// Error-rate curves over a threshold grid and their cross-over point.
struct SweepResult {
  std::vector<double> thresholds;
  std::vector<double> sonorant_error;   // fraction of sonorant frames above T
  std::vector<double> fricative_error;  // fraction of fricative frames at or below T
  double crossover_threshold = 0.0;
  double crossover_error = 0.0;
};

/// 0 to 1.57 rad in steps of 0.005.
inline std::vector<double> default_threshold_grid() {
  std::vector<double> grid;
  grid.reserve(315);
  for (int i = 0; i <= 314; ++i) grid.push_back(static_cast<double>(i) * 0.005);
  return grid;
}

/// Counts classification errors per threshold with the classifier's tie
/// rule (a value above T is fricative, equality stays sonorant). The
/// cross-over interpolates linearly between the bracketing grid points
/// where the error difference changes sign; a plateau of minimal absolute
/// difference reports its midpoint.
inline SweepResult threshold_sweep(const ClassPools& pools, std::vector<double> grid) {
  if (pools.sonorant.empty() || pools.fricative.empty())
    throw UndefinedSweep("threshold sweep needs both class pools non-empty");
  if (grid.empty()) throw Error("threshold grid is empty");
  if (!std::is_sorted(grid.begin(), grid.end()))
    throw Error("threshold grid must be ascending");

  std::vector<double> son = pools.sonorant;
  std::vector<double> fric = pools.fricative;
  std::sort(son.begin(), son.end());
  std::sort(fric.begin(), fric.end());
  const double n_son = static_cast<double>(son.size());
  const double n_fric = static_cast<double>(fric.size());

  SweepResult result;
  result.thresholds = std::move(grid);
  result.sonorant_error.reserve(result.thresholds.size());
  result.fricative_error.reserve(result.thresholds.size());
  for (double t : result.thresholds) {
    const auto son_le =
        static_cast<double>(std::upper_bound(son.begin(), son.end(), t) - son.begin());
    const auto fric_le =
        static_cast<double>(std::upper_bound(fric.begin(), fric.end(), t) - fric.begin());
    result.sonorant_error.push_back((n_son - son_le) / n_son);
    result.fricative_error.push_back(fric_le / n_fric);
  }

  const std::size_t n = result.thresholds.size();
  std::vector<double> diff(n);
  for (std::size_t i = 0; i < n; ++i)
    diff[i] = result.sonorant_error[i] - result.fricative_error[i];

  double min_abs = std::abs(diff[0]);
  for (std::size_t i = 1; i < n; ++i) min_abs = std::min(min_abs, std::abs(diff[i]));

  // No exact zero but a strict sign change: interpolate within the bracket.
  if (min_abs > 0.0) {
    for (std::size_t i = 0; i + 1 < n; ++i) {
      if (diff[i] > 0.0 && diff[i + 1] < 0.0) {
        const double t0 = result.thresholds[i], t1 = result.thresholds[i + 1];
        const double alpha = diff[i] / (diff[i] - diff[i + 1]);
        result.crossover_threshold = t0 + alpha * (t1 - t0);
        const double son_at =
            result.sonorant_error[i] +
            alpha * (result.sonorant_error[i + 1] - result.sonorant_error[i]);
        const double fric_at =
            result.fricative_error[i] +
            alpha * (result.fricative_error[i + 1] - result.fricative_error[i]);
        result.crossover_error = (son_at + fric_at) / 2.0;
        return result;
      }
    }
  }

  // Otherwise take the first contiguous run attaining the minimal
  // |difference| (a zero-error plateau for separable pools) and report its
  // midpoint.
  std::size_t run_begin = 0;
  while (run_begin < n && std::abs(diff[run_begin]) != min_abs) ++run_begin;
  std::size_t run_end = run_begin;
  while (run_end + 1 < n && std::abs(diff[run_end + 1]) == min_abs) ++run_end;

  result.crossover_threshold =
      (result.thresholds[run_begin] + result.thresholds[run_end]) / 2.0;
  const std::size_t mid = (run_begin + run_end) / 2;
  result.crossover_error =
      (result.sonorant_error[mid] + result.fricative_error[mid]) / 2.0;
  return result;
}

/// Fraction of pooled frames the threshold classifies correctly.
inline double frame_accuracy(const ClassPools& pools, double threshold) {
  const std::size_t total = pools.total_frames();
  if (total == 0) throw UndefinedSweep("frame accuracy over empty pools");
  std::size_t correct = 0;
  for (double v : pools.sonorant)
    if (!(v > threshold)) ++correct;
  for (double v : pools.fricative)
    if (v > threshold) ++correct;
  return static_cast<double>(correct) / static_cast<double>(total);
}

/// One noise condition of the robustness table.
struct NoiseConditionRow {
  std::string label;  // "Orgnl" or "<snr> dB"
  double target_snr_db = std::numeric_limits<double>::infinity();
  double calibrated_threshold = 0.0;
  double calibration_crossover_error = 0.0;
  double dev_accuracy_pct = 0.0;
  double full_accuracy_pct = 0.0;
  std::size_t dev_sonorant_frames = 0, dev_fricative_frames = 0;
  std::size_t full_sonorant_frames = 0, full_fricative_frames = 0;
  std::size_t files_processed = 0, files_failed = 0;
};

struct AccuracyReport {
  std::vector<NoiseConditionRow> rows;
  std::string calibration_split;  // which split calibrated the threshold
  std::uint64_t master_seed = 0;
  std::vector<FileFailure> failures;  // across all conditions, deduplicated by path
};

inline std::string snr_label(double snr_db) {
  if (std::isinf(snr_db) && snr_db > 0.0) return "Orgnl";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g dB", snr_db);
  return buf;
}

/// Reruns the corpus at each noise level: injects per-file seeded noise,
/// recalibrates the threshold on the dev split (the full set when no entry
/// is tagged dev), and reports frame accuracy for both splits. A clean
/// condition is always included first.
inline AccuracyReport run_noise_experiment(const std::vector<CorpusEntry>& entries,
                                           const PhoneClassMap& map,
                                           const EvalOptions& base_options,
                                           const std::vector<double>& snr_levels_db,
                                           std::uint64_t master_seed) {
  const bool have_dev = std::any_of(entries.begin(), entries.end(), [](const CorpusEntry& e) {
    return e.split == SplitTag::Dev;
  });

  AccuracyReport report;
  report.master_seed = master_seed;
  report.calibration_split = have_dev ? "dev" : "full (no dev split designated)";

  std::vector<double> conditions;
  conditions.push_back(std::numeric_limits<double>::infinity());
  conditions.insert(conditions.end(), snr_levels_db.begin(), snr_levels_db.end());

  for (double snr : conditions) {
    EvalOptions options = base_options;
    options.noise.target_snr_db = snr;
    options.noise.rng_seed = master_seed;

    const std::vector<detail::PerFilePools> per_file =
        detail::collect_per_file(entries, map, options);
    const ClassPools full = detail::merge_pools(entries, per_file, false);
    const ClassPools dev =
        have_dev ? detail::merge_pools(entries, per_file, true) : full;

    const SweepResult sweep = threshold_sweep(dev, default_threshold_grid());

    NoiseConditionRow row;
    row.label = snr_label(snr);
    row.target_snr_db = snr;
    row.calibrated_threshold = sweep.crossover_threshold;
    row.calibration_crossover_error = sweep.crossover_error;
    row.dev_accuracy_pct = 100.0 * frame_accuracy(dev, sweep.crossover_threshold);
    row.full_accuracy_pct = 100.0 * frame_accuracy(full, sweep.crossover_threshold);
    row.dev_sonorant_frames = dev.sonorant.size();
    row.dev_fricative_frames = dev.fricative.size();
    row.full_sonorant_frames = full.sonorant.size();
    row.full_fricative_frames = full.fricative.size();
    row.files_processed = full.files_processed;
    row.files_failed = full.failures.size();
    report.rows.push_back(std::move(row));

    for (const FileFailure& f : full.failures) {
      const bool seen = std::any_of(report.failures.begin(), report.failures.end(),
                                    [&](const FileFailure& g) { return g.path == f.path; });
      if (!seen) report.failures.push_back(f);
    }
  }
  return report;
}

}  // namespace sfdi

// sfdi/reports.hpp

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

#include <cstdio>
#include <ostream>
#include <string>

#include <json.hpp>

#include "sfdi/classify.hpp"
#include "sfdi/contour.hpp"
#include "sfdi/eval.hpp"

namespace sfdi {

/// Fixed-width-free, locale-independent float formatting shared by all CSV
/// writers so identical runs emit identical bytes.
inline std::string fmt_g(double v, int precision = 12) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", precision, v);
  return buf;
}

inline void write_contour_csv(std::ostream& out, const SfdiContour& contour) {
  out << "frame_index,time_ms,a_one,t_one,energy,degenerate_flag\n";
  for (const ContourPoint& p : contour.points) {
    out << p.frame_index << ',' << fmt_g(p.center_start_ms) << ',' << fmt_g(p.a_one)
        << ',' << fmt_g(p.t_one) << ',' << fmt_g(p.energy) << ','
        << (p.degenerate ? 1 : 0) << '\n';
  }
}

inline void write_trace_csv(std::ostream& out, const SfdiContour& contour,
                            const SegmentationTrace& trace) {
  out << "frame_index,time_ms,level\n";
  for (std::size_t i = 0; i < trace.levels.size(); ++i) {
    out << contour.points[i].frame_index << ','
        << fmt_g(contour.points[i].center_start_ms) << ',' << fmt_g(trace.levels[i])
        << '\n';
  }
}

inline void write_segments_csv(std::ostream& out, const SegmentationTrace& trace) {
  out << "class,start_ms,end_ms\n";
  for (const ClassSegment& s : trace.segments) {
    out << frame_class_name(s.cls) << ',' << fmt_g(s.start_ms) << ',' << fmt_g(s.end_ms)
        << '\n';
  }
}

inline void write_histogram_csv(std::ostream& out, const Histogram& hist) {
  out << "bin_left,count,normalized\n";
  for (std::size_t i = 0; i < hist.counts.size(); ++i) {
    out << fmt_g(hist.bin_edges[i]) << ',' << hist.counts[i] << ','
        << fmt_g(hist.normalized[i]) << '\n';
  }
}

inline void write_sweep_csv(std::ostream& out, const SweepResult& sweep) {
  out << "threshold,sonorant_error,fricative_error\n";
  for (std::size_t i = 0; i < sweep.thresholds.size(); ++i) {
    out << fmt_g(sweep.thresholds[i]) << ',' << fmt_g(sweep.sonorant_error[i]) << ','
        << fmt_g(sweep.fricative_error[i]) << '\n';
  }
}

inline void write_report_csv(std::ostream& out, const AccuracyReport& report) {
  out << "noise_level,threshold,dev_accuracy_pct,full_accuracy_pct\n";
  for (const NoiseConditionRow& row : report.rows) {
    out << row.label << ',' << fmt_g(row.calibrated_threshold) << ','
        << fmt_g(row.dev_accuracy_pct) << ',' << fmt_g(row.full_accuracy_pct) << '\n';
  }
}

inline nlohmann::json sweep_to_json(const SweepResult& sweep) {
  return {{"crossover_threshold", sweep.crossover_threshold},
          {"crossover_error", sweep.crossover_error},
          {"grid_points", sweep.thresholds.size()}};
}

inline nlohmann::json histogram_to_json(const Histogram& hist) {
  return {{"bin_width", hist.bin_width},
          {"bins", hist.counts.size()},
          {"total_frames", hist.total}};
}

inline nlohmann::json pools_to_json(const ClassPools& pools) {
  nlohmann::json failures = nlohmann::json::array();
  for (const FileFailure& f : pools.failures)
    failures.push_back({{"path", f.path}, {"error", f.message}});
  return {{"sonorant_frames", pools.sonorant.size()},
          {"fricative_frames", pools.fricative.size()},
          {"files_processed", pools.files_processed},
          {"files_failed", pools.failures.size()},
          {"failures", failures}};
}

inline nlohmann::json report_to_json(const AccuracyReport& report) {
  nlohmann::json rows = nlohmann::json::array();
  for (const NoiseConditionRow& row : report.rows) {
    rows.push_back({{"noise_level", row.label},
                    {"target_snr_db", std::isinf(row.target_snr_db)
                                          ? nlohmann::json(nullptr)
                                          : nlohmann::json(row.target_snr_db)},
                    {"threshold", row.calibrated_threshold},
                    {"calibration_crossover_error", row.calibration_crossover_error},
                    {"dev_accuracy_pct", row.dev_accuracy_pct},
                    {"full_accuracy_pct", row.full_accuracy_pct},
                    {"dev_sonorant_frames", row.dev_sonorant_frames},
                    {"dev_fricative_frames", row.dev_fricative_frames},
                    {"full_sonorant_frames", row.full_sonorant_frames},
                    {"full_fricative_frames", row.full_fricative_frames},
                    {"files_processed", row.files_processed},
                    {"files_failed", row.files_failed}});
  }
  nlohmann::json failures = nlohmann::json::array();
  for (const FileFailure& f : report.failures)
    failures.push_back({{"path", f.path}, {"error", f.message}});
  return {{"calibration_split", report.calibration_split},
          {"master_seed", report.master_seed},
          {"rows", rows},
          {"failures", failures}};
}

}  // namespace sfdi

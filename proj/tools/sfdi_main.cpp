// tools/sfdi_main.cpp

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

// Command-line front end: analyze, segment, evaluate, sweep, histogram,
// and noise sub-commands over single files or whole corpora.
//
// Exit codes: 0 success, 2 input error, 3 empty corpus,
// 4 internal numeric failure.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sfdi/sfdi.hpp"

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitEmptyCorpus = 3;
constexpr int kExitNumeric = 4;

struct RunConfig {
  double frame_ms = 20.0;
  double hop_ms = 5.0;
  double preemph = 0.97;
  std::string window = "hanning";
  double threshold = 1.1;
  double silence_ratio = 0.0004;
  int smooth_frames = 0;
  double bin_width = 0.025;
  double r0_floor = 0.0;
  std::vector<double> snr_list = {20.0, 15.0, 10.0, 5.0, 0.0};
  std::uint64_t seed = 0;
  std::string manifest;
  std::string phone_map;
  std::string corpus_root;
  std::string out_dir = ".";
  int jobs = 1;

  sfdi::FrameSpec frame_spec() const {
    sfdi::FrameSpec spec;
    spec.frame_len_ms = frame_ms;
    spec.hop_ms = hop_ms;
    spec.preemphasis_alpha = preemph;
    spec.window = window == "rectangular" ? sfdi::WindowType::Rectangular
                                          : sfdi::WindowType::Hanning;
    return spec;
  }

  sfdi::ClassifierConfig classifier_config() const {
    sfdi::ClassifierConfig config;
    config.threshold_t = threshold;
    config.silence_ratio = silence_ratio;
    config.smoothing_frames = smooth_frames;
    return config;
  }

  sfdi::EvalOptions eval_options() const {
    sfdi::EvalOptions options;
    options.frame_spec = frame_spec();
    options.silence_ratio = silence_ratio;
    options.r0_floor = r0_floor;
    options.jobs = jobs;
    options.noise.rng_seed = seed;
    return options;
  }

  json to_json() const {
    return {{"frame_ms", frame_ms},
            {"hop_ms", hop_ms},
            {"preemph", preemph},
            {"window", window},
            {"threshold", threshold},
            {"silence_ratio", silence_ratio},
            {"smooth_frames", smooth_frames},
            {"bin_width", bin_width},
            {"r0_floor", r0_floor},
            {"snr_list", snr_list},
            {"seed", seed},
            {"manifest", manifest},
            {"phone_map", phone_map},
            {"corpus_root", corpus_root},
            {"jobs", jobs}};
  }
};

std::string fmt_pct(double pct) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", pct);
  return buf;
}

void write_text_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw sfdi::Error("cannot open " + path.string() + " for writing");
  out << text;
  if (!out) throw sfdi::Error("write failed: " + path.string());
}

fs::path ensure_out_dir(const RunConfig& config) {
  fs::path dir(config.out_dir);
  fs::create_directories(dir);
  return dir;
}

sfdi::PhoneClassMap load_phone_map(const RunConfig& config) {
  if (!config.phone_map.empty()) return sfdi::PhoneClassMap::from_file(config.phone_map);
  return sfdi::PhoneClassMap::timit_default();
}

std::vector<sfdi::CorpusEntry> load_corpus(const RunConfig& config) {
  if (!config.manifest.empty()) return sfdi::read_manifest(config.manifest);
  std::string root = config.corpus_root;
  if (root.empty()) {
    if (const char* env = std::getenv("SFDI_CORPUS_ROOT")) root = env;
  }
  if (root.empty())
    throw sfdi::Error("no corpus given: pass a corpus root, --manifest, or set SFDI_CORPUS_ROOT");
  return sfdi::scan_corpus_dir(root);
}

json corpus_metadata(const RunConfig& config, const std::vector<sfdi::CorpusEntry>& entries) {
  std::size_t dev = 0;
  for (const auto& e : entries)
    if (e.split == sfdi::SplitTag::Dev) ++dev;
  return {{"config", config.to_json()},
          {"seed", config.seed},
          {"corpus_digest", sfdi::corpus_digest(entries)},
          {"corpus_files", entries.size()},
          {"dev_files", dev}};
}

void write_failures_sidecar(const fs::path& out_dir,
                            const std::vector<sfdi::FileFailure>& failures) {
  if (failures.empty()) return;
  std::string text;
  for (const auto& f : failures) text += f.path + "\t" + f.message + "\n";
  write_text_file(out_dir / "errors.txt", text);
}

// Partial-failure policy: the run counts as successful while at least 90%
// of the corpus was processed.
int partial_failure_exit(std::size_t processed, std::size_t failed) {
  const std::size_t total = processed + failed;
  if (total == 0) return kExitEmptyCorpus;
  return (10 * processed >= 9 * total) ? kExitOk : kExitInput;
}

int cmd_analyze(const RunConfig& config, const std::string& audio_path) {
  const sfdi::AudioBuffer buffer = sfdi::read_audio(audio_path);
  const sfdi::SfdiContour contour =
      sfdi::sfdi_contour(buffer, config.frame_spec(), config.r0_floor);

  const fs::path out_dir = ensure_out_dir(config);
  const fs::path out_path = out_dir / (fs::path(audio_path).stem().string() + "_contour.csv");
  std::ostringstream csv;
  sfdi::write_contour_csv(csv, contour);
  write_text_file(out_path, csv.str());
  std::cout << "frames=" << contour.size() << " output=" << out_path.string() << "\n";
  return kExitOk;
}

int cmd_segment(const RunConfig& config, const std::string& audio_path) {
  const sfdi::AudioBuffer buffer = sfdi::read_audio(audio_path);
  const sfdi::SfdiContour contour =
      sfdi::sfdi_contour(buffer, config.frame_spec(), config.r0_floor);
  const sfdi::SegmentationTrace trace = sfdi::segment(contour, config.classifier_config());

  const fs::path out_dir = ensure_out_dir(config);
  const std::string stem = fs::path(audio_path).stem().string();
  std::ostringstream trace_csv, segments_csv;
  sfdi::write_trace_csv(trace_csv, contour, trace);
  sfdi::write_segments_csv(segments_csv, trace);
  const fs::path trace_path = out_dir / (stem + "_trace.csv");
  const fs::path segments_path = out_dir / (stem + "_segments.csv");
  write_text_file(trace_path, trace_csv.str());
  write_text_file(segments_path, segments_csv.str());
  std::cout << "frames=" << contour.size() << " segments=" << trace.segments.size()
            << " output=" << trace_path.string() << "," << segments_path.string() << "\n";
  return kExitOk;
}

int cmd_evaluate(const RunConfig& config) {
  const std::vector<sfdi::CorpusEntry> entries = load_corpus(config);
  if (entries.empty()) {
    std::cerr << "error: empty corpus\n";
    return kExitEmptyCorpus;
  }
  const sfdi::PhoneClassMap map = load_phone_map(config);
  const sfdi::ClassPools pools = sfdi::collect_sfdi_by_class(entries, map, config.eval_options());
  const double accuracy_pct = 100.0 * sfdi::frame_accuracy(pools, config.threshold);

  const fs::path out_dir = ensure_out_dir(config);
  std::ostringstream csv;
  csv << "threshold,accuracy_pct,sonorant_frames,fricative_frames,files_processed,files_failed\n"
      << sfdi::fmt_g(config.threshold) << ',' << sfdi::fmt_g(accuracy_pct) << ','
      << pools.sonorant.size() << ',' << pools.fricative.size() << ','
      << pools.files_processed << ',' << pools.failures.size() << '\n';
  write_text_file(out_dir / "evaluate.csv", csv.str());

  json doc = corpus_metadata(config, entries);
  doc["pools"] = sfdi::pools_to_json(pools);
  doc["threshold"] = config.threshold;
  doc["accuracy_pct"] = accuracy_pct;
  write_text_file(out_dir / "evaluate.json", doc.dump(2) + "\n");
  write_failures_sidecar(out_dir, pools.failures);

  std::cout << "accuracy=" << fmt_pct(accuracy_pct) << " threshold=" << sfdi::fmt_g(config.threshold)
            << " frames=" << pools.total_frames() << "\n";
  return partial_failure_exit(pools.files_processed, pools.failures.size());
}

int cmd_sweep(const RunConfig& config) {
  const std::vector<sfdi::CorpusEntry> entries = load_corpus(config);
  if (entries.empty()) {
    std::cerr << "error: empty corpus\n";
    return kExitEmptyCorpus;
  }
  const sfdi::PhoneClassMap map = load_phone_map(config);
  const sfdi::ClassPools pools = sfdi::collect_sfdi_by_class(entries, map, config.eval_options());
  const sfdi::SweepResult sweep = sfdi::threshold_sweep(pools, sfdi::default_threshold_grid());
  const double accuracy_pct = 100.0 * sfdi::frame_accuracy(pools, sweep.crossover_threshold);

  const fs::path out_dir = ensure_out_dir(config);
  std::ostringstream csv;
  sfdi::write_sweep_csv(csv, sweep);
  write_text_file(out_dir / "sweep.csv", csv.str());

  json doc = corpus_metadata(config, entries);
  doc["sweep"] = sfdi::sweep_to_json(sweep);
  doc["pools"] = sfdi::pools_to_json(pools);
  doc["accuracy_pct_at_crossover"] = accuracy_pct;
  write_text_file(out_dir / "sweep.json", doc.dump(2) + "\n");
  write_failures_sidecar(out_dir, pools.failures);

  std::cout << "accuracy=" << fmt_pct(accuracy_pct) << " threshold="
            << sfdi::fmt_g(sweep.crossover_threshold) << " frames=" << pools.total_frames()
            << " crossover_error=" << sfdi::fmt_g(sweep.crossover_error) << "\n";
  return partial_failure_exit(pools.files_processed, pools.failures.size());
}

int cmd_histogram(const RunConfig& config) {
  const std::vector<sfdi::CorpusEntry> entries = load_corpus(config);
  if (entries.empty()) {
    std::cerr << "error: empty corpus\n";
    return kExitEmptyCorpus;
  }
  const sfdi::PhoneClassMap map = load_phone_map(config);
  const sfdi::ClassPools pools = sfdi::collect_sfdi_by_class(entries, map, config.eval_options());
  const auto [son_hist, fric_hist] = sfdi::class_histograms(pools, config.bin_width);
  const double overlap = sfdi::histogram_overlap(son_hist, fric_hist);
  const double accuracy_pct =
      pools.total_frames() > 0 ? 100.0 * sfdi::frame_accuracy(pools, config.threshold) : 0.0;

  const fs::path out_dir = ensure_out_dir(config);
  std::ostringstream son_csv, fric_csv;
  sfdi::write_histogram_csv(son_csv, son_hist);
  sfdi::write_histogram_csv(fric_csv, fric_hist);
  write_text_file(out_dir / "histogram_sonorant.csv", son_csv.str());
  write_text_file(out_dir / "histogram_fricative.csv", fric_csv.str());

  json doc = corpus_metadata(config, entries);
  doc["sonorant_histogram"] = sfdi::histogram_to_json(son_hist);
  doc["fricative_histogram"] = sfdi::histogram_to_json(fric_hist);
  doc["overlap_mass"] = overlap;
  doc["pools"] = sfdi::pools_to_json(pools);
  write_text_file(out_dir / "histogram.json", doc.dump(2) + "\n");
  write_failures_sidecar(out_dir, pools.failures);

  std::cout << "accuracy=" << fmt_pct(accuracy_pct) << " threshold=" << sfdi::fmt_g(config.threshold)
            << " frames=" << pools.total_frames() << " overlap=" << sfdi::fmt_g(overlap) << "\n";
  return partial_failure_exit(pools.files_processed, pools.failures.size());
}

int cmd_noise(const RunConfig& config) {
  const std::vector<sfdi::CorpusEntry> entries = load_corpus(config);
  if (entries.empty()) {
    std::cerr << "error: empty corpus\n";
    return kExitEmptyCorpus;
  }
  const sfdi::PhoneClassMap map = load_phone_map(config);
  const sfdi::AccuracyReport report = sfdi::run_noise_experiment(
      entries, map, config.eval_options(), config.snr_list, config.seed);

  const fs::path out_dir = ensure_out_dir(config);
  std::ostringstream csv;
  sfdi::write_report_csv(csv, report);
  write_text_file(out_dir / "noise_report.csv", csv.str());

  json doc = corpus_metadata(config, entries);
  doc["report"] = sfdi::report_to_json(report);
  write_text_file(out_dir / "noise_report.json", doc.dump(2) + "\n");
  write_failures_sidecar(out_dir, report.failures);

  const sfdi::NoiseConditionRow& clean = report.rows.front();
  std::cout << "accuracy=" << fmt_pct(clean.full_accuracy_pct) << " threshold="
            << sfdi::fmt_g(clean.calibrated_threshold) << " frames="
            << clean.full_sonorant_frames + clean.full_fricative_frames
            << " conditions=" << report.rows.size() << "\n";
  const std::size_t failed = report.rows.front().files_failed;
  return partial_failure_exit(report.rows.front().files_processed, failed);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sonorant/fricative discrimination toolkit: frame-wise LPC analysis,\n"
               "arctan(sum-of-LPCs) contours, threshold classification, and corpus\n"
               "evaluation reports."};
  app.fallthrough();
  app.set_config("--config", "", "Line-oriented key=value configuration file");

  RunConfig config;
  app.add_option("--frame-ms", config.frame_ms, "Frame length in ms")->capture_default_str();
  app.add_option("--hop-ms", config.hop_ms, "Frame hop in ms")->capture_default_str();
  app.add_option("--preemph", config.preemph, "Preemphasis coefficient in [0,1)")
      ->capture_default_str();
  app.add_option("--window", config.window, "Analysis window: hanning or rectangular")
      ->check(CLI::IsMember({"hanning", "rectangular"}))
      ->capture_default_str();
  app.add_option("--threshold", config.threshold, "Classification threshold on t_one (rad)")
      ->capture_default_str();
  app.add_option("--silence-ratio", config.silence_ratio,
                 "Silence gate as a fraction of the max frame energy")
      ->capture_default_str();
  app.add_option("--smooth-frames", config.smooth_frames,
                 "Majority-vote smoothing window in frames (0 = off)")
      ->capture_default_str();
  app.add_option("--bin-width", config.bin_width, "Histogram bin width (rad)")
      ->capture_default_str();
  app.add_option("--r0-floor", config.r0_floor,
                 "Autocorrelation r[0] floor below which a frame is degenerate")
      ->capture_default_str();
  app.add_option("--snr-list", config.snr_list, "Noise experiment SNR levels in dB")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--seed", config.seed, "Master RNG seed")->capture_default_str();
  app.add_option("--manifest", config.manifest,
                 "Corpus manifest: audio<TAB>label<TAB>split per line");
  app.add_option("--phone-map", config.phone_map,
                 "Phone class map file (default: built-in TIMIT map)");
  app.add_option("--out-dir", config.out_dir, "Output directory")->capture_default_str();
  app.add_option("--jobs", config.jobs, "Parallel workers over corpus files")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string audio_path;
  std::string corpus_root;

  CLI::App* analyze = app.add_subcommand("analyze", "Write the per-frame feature contour CSV");
  analyze->add_option("audio", audio_path, "Input audio file (SPHERE or WAV)")->required();

  CLI::App* segment_cmd =
      app.add_subcommand("segment", "Write the three-level trace and segment list CSVs");
  segment_cmd->add_option("audio", audio_path, "Input audio file (SPHERE or WAV)")->required();

  CLI::App* evaluate = app.add_subcommand(
      "evaluate", "Frame accuracy of the configured threshold over a labeled corpus");
  evaluate->add_option("corpus", corpus_root, "Corpus root directory (or use --manifest)");

  CLI::App* sweep = app.add_subcommand(
      "sweep", "Error-rate curves over a threshold grid and their cross-over");
  sweep->add_option("corpus", corpus_root, "Corpus root directory (or use --manifest)");

  CLI::App* histogram =
      app.add_subcommand("histogram", "Per-class normalized feature histograms");
  histogram->add_option("corpus", corpus_root, "Corpus root directory (or use --manifest)");

  CLI::App* noise = app.add_subcommand(
      "noise", "Noise-robustness report over a list of SNR levels");
  noise->add_option("corpus", corpus_root, "Corpus root directory (or use --manifest)");

  app.require_subcommand(1);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }
  config.corpus_root = corpus_root;

  try {
    if (analyze->parsed()) return cmd_analyze(config, audio_path);
    if (segment_cmd->parsed()) return cmd_segment(config, audio_path);
    if (evaluate->parsed()) return cmd_evaluate(config);
    if (sweep->parsed()) return cmd_sweep(config);
    if (histogram->parsed()) return cmd_histogram(config);
    if (noise->parsed()) return cmd_noise(config);
    std::cerr << "error: no sub-command\n";
    return kExitInput;
  } catch (const sfdi::EmptySignal& e) {
    std::cerr << "error: empty signal (" << e.what() << ")\n";
    return kExitInput;
  } catch (const sfdi::NumericalBreakdown& e) {
    std::cerr << "error: numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const sfdi::DegenerateFrame& e) {
    std::cerr << "error: numeric failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const sfdi::UndefinedSweep& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const sfdi::ZeroSignalPower& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const sfdi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitNumeric;
  }
}

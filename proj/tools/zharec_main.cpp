// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// zharec command-line tool: analyze | train | classify | eval | synth.
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 numeric/training
// failure.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "zharec/zharec.hpp"

namespace {

struct CliOptions {
  std::uint64_t seed = 1;

  // front end
  int frame_len = 512;
  int hop = 256;
  std::string window = "hamming";
  double preemphasis = 0.97;
  int order = 18;
  int cepstrum_len = 18;
  int grid_len = 512;
  std::string grid_mode = "half-bin";

  // quantizer + HMM
  int codebook_size = 64;
  int states = 3;
  std::string topology = "ergodic";
  int max_iters = 100;
  double tol = 1e-4;

  zharec::FramingConfig framing() const {
    zharec::FramingConfig cfg;
    cfg.frame_len = frame_len;
    cfg.hop = hop;
    cfg.window = window == "rectangular" ? zharec::WindowType::kRectangular
                                         : zharec::WindowType::kHamming;
    cfg.preemphasis = preemphasis;
    return cfg;
  }

  zharec::LpcConfig lpc() const {
    zharec::LpcConfig cfg;
    cfg.order = order;
    cfg.cepstrum_len = cepstrum_len;
    cfg.spectrum_grid_len = grid_len;
    cfg.grid_mode = grid_mode == "bin-start" ? zharec::SpectrumGridMode::kBinStart
                                             : zharec::SpectrumGridMode::kHalfBinCentered;
    return cfg;
  }

  zharec::TrainerConfig trainer() const {
    zharec::TrainerConfig cfg;
    cfg.front_end = {framing(), lpc()};
    cfg.codebook_size = codebook_size;
    cfg.n_states = states;
    cfg.topology = topology == "left-right" ? zharec::Topology::kLeftToRight
                                            : zharec::Topology::kErgodic;
    cfg.max_iters = max_iters;
    cfg.tol = tol;
    return cfg;
  }
};

// Writes to a file, or to stdout when path is "-".
class OutputTarget {
 public:
  explicit OutputTarget(const std::string& path) {
    if (path != "-") {
      file_.open(path, std::ios::binary);
      if (!file_) throw zharec::IoError("cannot open output file: " + path);
      out_ = &file_;
    }
  }
  std::ostream& stream() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_ = &std::cout;
};

std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

zharec::AudioClip load_and_warn(const std::string& path) {
  zharec::AudioClip clip = zharec::load_wav(path);
  if (clip.sample_rate_hz != 16000) {
    std::cerr << "warning: " << path << " is sampled at " << clip.sample_rate_hz
              << " Hz, not 16000 Hz; analysis proceeds at the file's rate\n";
  }
  return clip;
}

int index_of_midpoint_frame(const zharec::ClipAnalysis& analysis, std::size_t clip_len,
                            int frame_len) {
  const double target = clip_len / 2.0;
  int best = 0;
  double best_dist = -1.0;
  for (std::size_t f = 0; f < analysis.frame_offsets.size(); ++f) {
    const double center = static_cast<double>(analysis.frame_offsets[f]) + frame_len / 2.0;
    const double d = std::abs(center - target);
    if (best_dist < 0.0 || d < best_dist) {
      best_dist = d;
      best = static_cast<int>(f);
    }
  }
  return best;
}

int cmd_analyze(const CliOptions& opts, const std::string& wav_path, bool all_frames,
                int frame_index, const std::string& spectrum_out,
                const std::string& features_out) {
  const zharec::AudioClip clip = load_and_warn(wav_path);
  const zharec::FramingConfig framing = opts.framing();
  const zharec::LpcConfig lpc = opts.lpc();
  const zharec::ClipAnalysis analysis = zharec::analyze_clip(clip, framing, lpc);

  std::vector<int> selected;
  if (all_frames) {
    for (std::size_t f = 0; f < analysis.features.size(); ++f) selected.push_back(static_cast<int>(f));
  } else if (frame_index >= 0) {
    if (static_cast<std::size_t>(frame_index) >= analysis.features.size()) {
      throw zharec::DataError("frame index " + std::to_string(frame_index) + " out of range (" +
                              std::to_string(analysis.features.size()) + " usable frames)");
    }
    selected.push_back(frame_index);
  } else {
    selected.push_back(index_of_midpoint_frame(analysis, clip.samples.size(), framing.frame_len));
  }

  {
    OutputTarget target(spectrum_out);
    std::ostream& out = target.stream();
    out << (selected.size() > 1 ? "frame_index,frequency_hz,magnitude_db\n"
                                : "frequency_hz,magnitude_db\n");
    for (int f : selected) {
      const zharec::LpcSpectrum spectrum = zharec::lpc_spectrum_db(
          analysis.models[static_cast<std::size_t>(f)], clip.sample_rate_hz,
          lpc.spectrum_grid_len, lpc.grid_mode);
      if (spectrum.degenerate) {
        std::cerr << "warning: frame " << f << " has zero gain; spectrum is -inf\n";
      }
      for (const zharec::SpectrumPoint& p : spectrum.points) {
        if (selected.size() > 1) out << f << ",";
        out << fmt6(p.frequency_hz) << "," << fmt6(p.magnitude_db) << "\n";
      }
    }
  }

  if (!features_out.empty()) {
    OutputTarget target(features_out);
    std::ostream& out = target.stream();
    out << "frame_index";
    for (int q = 1; q <= lpc.cepstrum_len; ++q) out << ",c" << q;
    out << "\n";
    for (int f : selected) {
      out << f;
      for (double c : analysis.features[static_cast<std::size_t>(f)]) out << "," << fmt6(c);
      out << "\n";
    }
  }

  if (analysis.skipped_frames > 0) {
    std::cerr << "note: skipped " << analysis.skipped_frames << " silent/degenerate frames\n";
  }
  return 0;
}

int cmd_train(const CliOptions& opts, const std::string& manifest_path,
              const std::string& model_out) {
  const std::vector<zharec::ManifestEntry> entries = zharec::read_manifest(manifest_path);
  std::vector<zharec::AudioClip> clips;
  clips.reserve(entries.size());
  for (const zharec::ManifestEntry& e : entries) {
    const std::string full = zharec::resolve_manifest_path(manifest_path, e.path);
    try {
      zharec::AudioClip clip = load_and_warn(full);
      clip.label = e.label;
      clips.push_back(std::move(clip));
    } catch (const zharec::Error& err) {
      throw zharec::DataError("manifest entry \"" + e.path + "\": " + err.what());
    }
  }

  std::vector<zharec::ClassTrainingInfo> info;
  const zharec::ClassifierBank bank = zharec::train_bank(clips, opts.trainer(), opts.seed, &info);
  zharec::save_bank(bank, model_out);

  for (const zharec::ClassTrainingInfo& i : info) {
    std::cout << "class " << i.label << ": final log-likelihood "
              << fmt6(i.final_log_likelihood) << " after " << i.iterations << " iterations\n";
  }
  std::cout << "wrote model (" << bank.classes.size() << " classes, codebook "
            << bank.codebook.size() << ") to " << model_out << "\n";
  return 0;
}

int cmd_classify(const std::string& model_path, const std::vector<std::string>& wav_paths) {
  const zharec::ClassifierBank bank = zharec::load_bank(model_path);

  std::cout << "path,predicted,margin";
  for (const std::string& c : bank.classes) std::cout << ",ll_" << c;
  std::cout << "\n";

  std::size_t failures = 0;
  for (const std::string& path : wav_paths) {
    try {
      const zharec::ClassificationResult r = zharec::classify(bank, load_and_warn(path));
      std::cout << path << "," << r.predicted << "," << fmt6(r.margin);
      for (double ll : r.log_likelihoods) std::cout << "," << fmt6(ll);
      std::cout << "\n";
    } catch (const zharec::Error& err) {
      ++failures;
      std::cerr << "error: " << path << ": " << err.what() << "\n";
    }
  }
  if (failures == wav_paths.size()) {
    throw zharec::DataError("classify: all " + std::to_string(failures) + " input files failed");
  }
  return 0;
}

int cmd_eval(const std::string& model_path, const std::string& manifest_path,
             const std::string& csv_out) {
  const zharec::ClassifierBank bank = zharec::load_bank(model_path);
  const std::vector<zharec::ManifestEntry> entries = zharec::read_manifest(manifest_path);

  std::vector<zharec::AudioClip> clips;
  for (const zharec::ManifestEntry& e : entries) {
    zharec::AudioClip clip = load_and_warn(zharec::resolve_manifest_path(manifest_path, e.path));
    clip.label = e.label;
    clips.push_back(std::move(clip));
  }
  const zharec::EvaluationReport report = zharec::evaluate(bank, clips);

  std::cout << "confusion matrix (rows = truth, columns = predicted)\n";
  std::printf("%10s", "");
  for (const std::string& c : report.classes) std::printf(" %9s", c.c_str());
  std::printf("\n");
  for (std::size_t i = 0; i < report.classes.size(); ++i) {
    std::printf("%10s", report.classes[i].c_str());
    for (std::size_t j = 0; j < report.classes.size(); ++j) {
      std::printf(" %9d", report.confusion[i][j]);
    }
    std::printf("\n");
  }
  int correct = 0;
  for (std::size_t i = 0; i < report.classes.size(); ++i) correct += report.confusion[i][i];
  std::cout << "accuracy: " << fmt6(report.accuracy) << " (" << correct << "/" << report.total
            << ")\n";

  if (!csv_out.empty()) {
    OutputTarget target(csv_out);
    std::ostream& out = target.stream();
    out << "truth";
    for (const std::string& c : report.classes) out << "," << c;
    out << "\n";
    for (std::size_t i = 0; i < report.classes.size(); ++i) {
      out << report.classes[i];
      for (std::size_t j = 0; j < report.classes.size(); ++j) out << "," << report.confusion[i][j];
      out << "\n";
    }
    out << "accuracy," << fmt6(report.accuracy) << "\n";
  }
  return 0;
}

int cmd_synth(const CliOptions& opts, const std::string& out_dir, int utterances,
              double duration) {
  zharec::SynthConfig cfg;
  cfg.utterances_per_class = utterances;
  cfg.duration_s = duration;
  const std::vector<zharec::ManifestEntry> manifest =
      zharec::generate_corpus(out_dir, cfg, opts.seed);
  std::cout << "wrote " << manifest.size() << " utterances and manifest.csv to " << out_dir
            << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"LPC-cepstrum + discrete-HMM isolated phoneme recognizer"};
  app.require_subcommand(1);
  app.set_config("--config", "", "Read options from an INI/TOML file");

  CliOptions opts;
  app.add_option("--seed", opts.seed, "Seed for every stochastic step")->capture_default_str();
  app.add_option("--frame-len", opts.frame_len, "Samples per analysis frame")->capture_default_str();
  app.add_option("--hop", opts.hop, "Samples between frame starts")->capture_default_str();
  app.add_option("--window", opts.window, "Analysis window")
      ->check(CLI::IsMember({"hamming", "rectangular"}))
      ->capture_default_str();
  app.add_option("--preemphasis", opts.preemphasis, "Preemphasis coefficient in [0,1)")
      ->capture_default_str();
  app.add_option("--order", opts.order, "LPC predictor order")->capture_default_str();
  app.add_option("--cepstrum-len", opts.cepstrum_len, "Cepstral coefficients per frame")
      ->capture_default_str();
  app.add_option("--grid-len", opts.grid_len, "Spectrum grid length (emits grid-len/2 bins)")
      ->capture_default_str();
  app.add_option("--grid-mode", opts.grid_mode, "Spectrum grid layout")
      ->check(CLI::IsMember({"half-bin", "bin-start"}))
      ->capture_default_str();
  app.add_option("--codebook-size", opts.codebook_size, "VQ codebook entries")->capture_default_str();
  app.add_option("--states", opts.states, "HMM states per class")->capture_default_str();
  app.add_option("--topology", opts.topology, "HMM transition structure")
      ->check(CLI::IsMember({"ergodic", "left-right"}))
      ->capture_default_str();
  app.add_option("--max-iters", opts.max_iters, "Max Baum-Welch iterations")->capture_default_str();
  app.add_option("--tol", opts.tol, "Baum-Welch log-likelihood stopping tolerance")
      ->capture_default_str();

  // analyze
  std::string wav_path, spectrum_out = "-", features_out;
  bool all_frames = false;
  int frame_index = -1;
  CLI::App* analyze = app.add_subcommand("analyze", "LPC spectrum section and cepstra of a WAV file");
  analyze->fallthrough();
  analyze->add_option("wav", wav_path, "Input WAV file")->required();
  analyze->add_flag("--all-frames", all_frames, "Emit every frame instead of the midpoint frame");
  analyze->add_option("--frame", frame_index, "Emit one specific usable-frame index");
  analyze->add_option("--spectrum-out", spectrum_out, "Spectrum CSV destination (- for stdout)")
      ->capture_default_str();
  analyze->add_option("--features-out", features_out, "Feature CSV destination (- for stdout)");

  // train
  std::string manifest_path, model_path;
  CLI::App* train = app.add_subcommand("train", "Train a classifier bank from a path,label manifest");
  train->fallthrough();
  train->add_option("manifest", manifest_path, "Manifest CSV (path,label)")->required();
  train->add_option("-o,--out", model_path, "Output model file")->required();

  // classify
  std::vector<std::string> classify_wavs;
  std::string classify_model;
  CLI::App* classify = app.add_subcommand("classify", "Classify WAV files against a trained model");
  classify->fallthrough();
  classify->add_option("model", classify_model, "Trained model file")->required();
  classify->add_option("wavs", classify_wavs, "WAV files to classify")->required();

  // eval
  std::string eval_model, eval_manifest, eval_csv_out;
  CLI::App* eval = app.add_subcommand("eval", "Evaluate a model against a labeled manifest");
  eval->fallthrough();
  eval->add_option("model", eval_model, "Trained model file")->required();
  eval->add_option("manifest", eval_manifest, "Manifest CSV (path,label)")->required();
  eval->add_option("--csv-out", eval_csv_out, "Also write the confusion matrix as CSV (- for stdout)");

  // synth
  std::string synth_dir;
  int synth_utterances = 20;
  double synth_duration = 0.5;
  CLI::App* synth = app.add_subcommand("synth", "Generate a synthetic labeled test corpus");
  synth->fallthrough();
  synth->add_option("dir", synth_dir, "Output directory")->required();
  synth->add_option("--utterances", synth_utterances, "Utterances per class")->capture_default_str();
  synth->add_option("--duration", synth_duration, "Utterance length in seconds")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (analyze->parsed()) {
      return cmd_analyze(opts, wav_path, all_frames, frame_index, spectrum_out, features_out);
    }
    if (train->parsed()) return cmd_train(opts, manifest_path, model_path);
    if (classify->parsed()) return cmd_classify(classify_model, classify_wavs);
    if (eval->parsed()) return cmd_eval(eval_model, eval_manifest, eval_csv_out);
    if (synth->parsed()) return cmd_synth(opts, synth_dir, synth_utterances, synth_duration);
  } catch (const zharec::NumericError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const zharec::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

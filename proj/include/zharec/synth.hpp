// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Synthetic vowel-like corpus: impulse-train-excited cascades of two-pole
// resonators, one formant layout per class, with seeded per-utterance
// jitter. Stands in for recorded speech in tests and demos.

#pragma once

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "zharec/errors.hpp"
#include "zharec/rng.hpp"
#include "zharec/wav.hpp"

namespace zharec {

struct SynthClassSpec {
  std::string label;
  std::vector<double> formants_hz;
  std::vector<double> bandwidths_hz;
  double f0_hz = 120.0;  // excitation pitch
};

// Three well-separated vowel-like classes named after the confusable Tamil
// approximants they stand in for.
inline std::vector<SynthClassSpec> default_synth_classes() {
  return {
      {"zha", {600.0, 1400.0, 2600.0}, {60.0, 90.0, 150.0}, 110.0},
      {"la", {350.0, 2100.0, 3100.0}, {60.0, 100.0, 160.0}, 130.0},
      {"lla", {950.0, 1800.0, 3400.0}, {70.0, 100.0, 170.0}, 150.0},
  };
}

// Applies the all-pole resonator 1/(1 - 2 r cos(theta) z^-1 + r^2 z^-2)
// in place.
inline void apply_resonator(std::vector<double>& x, double center_hz, double bandwidth_hz,
                            int sample_rate_hz) {
  const double r = std::exp(-3.141592653589793238463 * bandwidth_hz / sample_rate_hz);
  const double theta = 6.283185307179586476925287 * center_hz / sample_rate_hz;
  const double a1 = 2.0 * r * std::cos(theta);
  const double a2 = -r * r;
  double y1 = 0.0, y2 = 0.0;
  for (double& v : x) {
    const double y = v + a1 * y1 + a2 * y2;
    y2 = y1;
    y1 = y;
    v = y;
  }
}

// Peak-normalizes to the given amplitude; a silent signal stays silent.
inline void normalize_peak(std::vector<double>& x, double peak) {
  double hi = 0.0;
  for (double v : x) hi = std::max(hi, std::abs(v));
  if (hi > 0.0) {
    for (double& v : x) v *= peak / hi;
  }
}

// One utterance: impulse train at a jittered pitch, glottal-style -12
// dB/octave shaping, the class's resonator cascade, a low noise floor, and
// short raised-cosine fades.
inline AudioClip synth_utterance(const SynthClassSpec& spec, double duration_s,
                                 int sample_rate_hz, std::uint64_t seed) {
  Rng rng(seed);
  const int n = static_cast<int>(duration_s * sample_rate_hz);
  if (n < 1) throw InvalidConfig("synth_utterance: duration too short");

  const double f0 = spec.f0_hz * (1.0 + 0.05 * rng.range(-1.0, 1.0));
  const double period = sample_rate_hz / f0;

  std::vector<double> x(static_cast<std::size_t>(n), 0.0);
  for (double pos = 0.0; pos < n; pos += period) {
    x[static_cast<std::size_t>(pos)] = 1.0;
  }
  for (double& v : x) v += 0.01 * rng.gaussian();

  // Two one-pole stages approximate the spectral slope of glottal pulses;
  // without this a flat excitation lets higher formants dominate once the
  // analysis preemphasis is applied.
  for (int stage = 0; stage < 2; ++stage) {
    double prev = 0.0;
    for (double& v : x) {
      v += 0.95 * prev;
      prev = v;
    }
  }

  for (std::size_t k = 0; k < spec.formants_hz.size(); ++k) {
    // F1 jitter stays within a fraction of a spectrum bin so the peak is
    // still attributable to the class's designed formant.
    const double jitter = k == 0 ? 0.01 : 0.02;
    const double f = spec.formants_hz[k] * (1.0 + jitter * rng.range(-1.0, 1.0));
    apply_resonator(x, f, spec.bandwidths_hz[k], sample_rate_hz);
  }

  const int fade = std::min(n / 4, sample_rate_hz / 100);  // 10 ms
  for (int i = 0; i < fade; ++i) {
    const double g = 0.5 - 0.5 * std::cos(3.141592653589793238463 * i / fade);
    x[static_cast<std::size_t>(i)] *= g;
    x[static_cast<std::size_t>(n - 1 - i)] *= g;
  }
  normalize_peak(x, 0.5);

  AudioClip clip;
  clip.samples = std::move(x);
  clip.sample_rate_hz = sample_rate_hz;
  clip.label = spec.label;
  return clip;
}

struct SynthConfig {
  int utterances_per_class = 20;
  double duration_s = 0.5;
  int sample_rate_hz = 16000;
};

struct ManifestEntry {
  std::string path;  // relative to the manifest's directory
  std::string label;
};

// Writes `<label>_<index>.wav` files plus manifest.csv (header "path,label")
// into `dir`, creating it if needed. Deterministic for a given seed.
inline std::vector<ManifestEntry> generate_corpus(const std::string& dir, const SynthConfig& cfg,
                                                  std::uint64_t seed,
                                                  const std::vector<SynthClassSpec>& classes =
                                                      default_synth_classes()) {
  if (cfg.utterances_per_class < 1) throw InvalidConfig("generate_corpus: need at least one utterance per class");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw IoError("generate_corpus: cannot create directory " + dir + ": " + ec.message());

  std::vector<ManifestEntry> manifest;
  for (std::size_t c = 0; c < classes.size(); ++c) {
    for (int u = 0; u < cfg.utterances_per_class; ++u) {
      const AudioClip clip = synth_utterance(
          classes[c], cfg.duration_s, cfg.sample_rate_hz,
          Rng::mix(seed, c * 1000 + static_cast<std::size_t>(u)));
      char name[64];
      std::snprintf(name, sizeof(name), "%s_%02d.wav", classes[c].label.c_str(), u);
      write_wav_pcm16((std::filesystem::path(dir) / name).string(), clip);
      manifest.push_back({name, classes[c].label});
    }
  }

  std::ofstream out(std::filesystem::path(dir) / "manifest.csv", std::ios::binary);
  if (!out) throw IoError("generate_corpus: cannot write manifest.csv in " + dir);
  out << "path,label\n";
  for (const ManifestEntry& e : manifest) out << e.path << "," << e.label << "\n";
  return manifest;
}

}  // namespace zharec

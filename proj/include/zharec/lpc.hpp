// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Per-frame LPC analysis: autocorrelation, Levinson-Durbin recursion,
// LPC-to-cepstrum conversion, and dB spectrum sections.
//
// Sign convention used throughout: the predictor is
//   xhat[n] = sum_k a_k * x[n-k],   A(z) = 1 - sum_k a_k z^-k,
// so the synthesis filter is H(z) = gain / A(z).

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include "zharec/errors.hpp"
#include "zharec/framing.hpp"

namespace zharec {

// How lpc_spectrum_db lays out its frequency grid. Both modes emit
// grid_len/2 rows covering [0, Fs/2).
//   kHalfBinCentered: f_m = (m + 0.5) * Fs / grid_len   (default)
//   kBinStart:        f_m =  m        * Fs / grid_len
// With the defaults (grid_len 512, Fs 16000) the half-bin-centered grid
// starts at 15.625 Hz and steps by 31.25 Hz.
enum class SpectrumGridMode { kHalfBinCentered, kBinStart };

struct LpcConfig {
  int order = 18;          // predictor order p
  int cepstrum_len = 18;   // Q, cepstral coefficients c_1..c_Q
  int spectrum_grid_len = 512;
  SpectrumGridMode grid_mode = SpectrumGridMode::kHalfBinCentered;
};

inline void validate(const LpcConfig& cfg, int frame_len) {
  if (cfg.order < 1 || cfg.order >= frame_len) {
    throw InvalidConfig("lpc: order must satisfy 1 <= order < frame_len");
  }
  if (cfg.cepstrum_len < 1) throw InvalidConfig("lpc: cepstrum_len must be >= 1");
  if (cfg.spectrum_grid_len < 2) throw InvalidConfig("lpc: spectrum_grid_len must be >= 2");
}

// All-pole model of one frame.
struct LpcModel {
  std::vector<double> coeffs;      // a_1..a_p
  std::vector<double> reflection;  // k_1..k_p
  double gain = 0.0;               // sqrt(error_energy)
  double error_energy = 0.0;       // final prediction-error energy E_p
};

// LPC-derived cepstrum c_1..c_Q of one frame (the log-gain term c_0 is
// excluded).
using CepstralVector = std::vector<double>;

// r[tau] = sum_{n=0}^{L-1-tau} x[n]*x[n+tau] for tau = 0..max_lag.
inline std::vector<double> autocorrelate(std::span<const double> frame, int max_lag) {
  if (max_lag < 0 || static_cast<std::size_t>(max_lag) >= frame.size()) {
    throw LagTooLarge("autocorrelate: max_lag " + std::to_string(max_lag) +
                      " not below frame length " + std::to_string(frame.size()));
  }
  std::vector<double> r(static_cast<std::size_t>(max_lag) + 1, 0.0);
  for (int tau = 0; tau <= max_lag; ++tau) {
    double acc = 0.0;
    const std::size_t n_max = frame.size() - static_cast<std::size_t>(tau);
    for (std::size_t n = 0; n < n_max; ++n) acc += frame[n] * frame[n + static_cast<std::size_t>(tau)];
    r[static_cast<std::size_t>(tau)] = acc;
  }
  return r;
}

// Solves the Toeplitz normal equations sum_k a_k r[|i-k|] = r[i], i = 1..p.
// Also yields the reflection coefficients and the prediction-error energy
// E_p = r[0] * prod(1 - k_i^2).
inline LpcModel levinson_durbin(std::span<const double> r, int order) {
  if (order < 1 || r.size() < static_cast<std::size_t>(order) + 1) {
    throw InvalidConfig("levinson_durbin: need r[0..p] with p >= 1");
  }
  if (r[0] <= 0.0) {
    throw ZeroEnergy("levinson_durbin: r[0] <= 0 (zero-energy frame)");
  }

  LpcModel model;
  model.coeffs.assign(static_cast<std::size_t>(order), 0.0);
  model.reflection.assign(static_cast<std::size_t>(order), 0.0);

  std::vector<double> prev(static_cast<std::size_t>(order), 0.0);
  double energy = r[0];
  for (int i = 1; i <= order; ++i) {
    double acc = r[static_cast<std::size_t>(i)];
    for (int j = 1; j < i; ++j) acc -= model.coeffs[static_cast<std::size_t>(j - 1)] * r[static_cast<std::size_t>(i - j)];
    const double k = acc / energy;

    prev = model.coeffs;
    model.coeffs[static_cast<std::size_t>(i - 1)] = k;
    for (int j = 1; j < i; ++j) {
      model.coeffs[static_cast<std::size_t>(j - 1)] =
          prev[static_cast<std::size_t>(j - 1)] - k * prev[static_cast<std::size_t>(i - j - 1)];
    }

    model.reflection[static_cast<std::size_t>(i - 1)] = k;
    energy *= 1.0 - k * k;
    if (energy <= 0.0 || !std::isfinite(energy)) {
      throw NumericalBreakdown("levinson_durbin: prediction-error energy became non-positive at order " +
                               std::to_string(i) + " (invalid autocorrelation input)");
    }
  }
  model.error_energy = energy;
  model.gain = std::sqrt(energy);
  return model;
}

// Cepstral recursion from predictor coefficients:
//   c_n = a_n + sum_{k=1}^{n-1} (k/n) c_k a_{n-k}          for n <= p
//   c_n =       sum_{k=n-p}^{n-1} (k/n) c_k a_{n-k}        for n >  p
inline CepstralVector lpc_to_cepstrum(const LpcModel& model, int q_len) {
  if (q_len < 1) throw InvalidConfig("lpc_to_cepstrum: q_len must be >= 1");
  const int p = static_cast<int>(model.coeffs.size());
  CepstralVector c(static_cast<std::size_t>(q_len), 0.0);
  for (int n = 1; n <= q_len; ++n) {
    double acc = n <= p ? model.coeffs[static_cast<std::size_t>(n - 1)] : 0.0;
    const int k_lo = n <= p ? 1 : n - p;
    for (int k = k_lo; k < n; ++k) {
      acc += (static_cast<double>(k) / n) * c[static_cast<std::size_t>(k - 1)] *
             model.coeffs[static_cast<std::size_t>(n - k - 1)];
    }
    c[static_cast<std::size_t>(n - 1)] = acc;
  }
  return c;
}

struct SpectrumPoint {
  double frequency_hz;
  double magnitude_db;
};

// Magnitude response of H(z) = gain/A(z) in dB over the configured grid.
struct LpcSpectrum {
  std::vector<SpectrumPoint> points;
  bool degenerate = false;  // gain 0: every bin is -inf
};

// 20*log10(gain / |A(e^{j 2 pi f / Fs})|) over grid_len/2 bins in [0, Fs/2).
inline LpcSpectrum lpc_spectrum_db(const LpcModel& model, int sample_rate_hz, int grid_len,
                                   SpectrumGridMode mode = SpectrumGridMode::kHalfBinCentered) {
  if (grid_len < 2) throw InvalidConfig("lpc_spectrum_db: grid_len must be >= 2");
  if (sample_rate_hz <= 0) throw InvalidConfig("lpc_spectrum_db: sample rate must be positive");

  LpcSpectrum spec;
  spec.degenerate = model.gain == 0.0;
  const double gain_db =
      spec.degenerate ? -std::numeric_limits<double>::infinity() : 20.0 * std::log10(model.gain);

  const int bins = grid_len / 2;
  spec.points.reserve(static_cast<std::size_t>(bins));
  const double offset = mode == SpectrumGridMode::kHalfBinCentered ? 0.5 : 0.0;
  for (int m = 0; m < bins; ++m) {
    const double f = (m + offset) * static_cast<double>(sample_rate_hz) / grid_len;
    const double theta = 6.283185307179586476925287 * f / sample_rate_hz;
    double re = 1.0;
    double im = 0.0;
    for (std::size_t k = 0; k < model.coeffs.size(); ++k) {
      const double kk = static_cast<double>(k + 1);
      re -= model.coeffs[k] * std::cos(kk * theta);
      im += model.coeffs[k] * std::sin(kk * theta);
    }
    const double a_sq = re * re + im * im;
    const double mag_db = spec.degenerate ? gain_db : gain_db - 10.0 * std::log10(a_sq);
    spec.points.push_back({f, mag_db});
  }
  return spec;
}

// Full front end for one clip: frames, per-frame LPC models, and cepstra.
// Frames whose autocorrelation has no energy (silence) and frames where the
// recursion breaks down are skipped and counted.
struct ClipAnalysis {
  std::vector<CepstralVector> features;      // one per usable frame, time order
  std::vector<LpcModel> models;              // parallel to features
  std::vector<std::size_t> frame_offsets;    // start sample of each usable frame
  std::size_t skipped_frames = 0;
};

inline ClipAnalysis analyze_clip(const AudioClip& clip, const FramingConfig& framing,
                                 const LpcConfig& lpc) {
  validate(framing);
  validate(lpc, framing.frame_len);

  ClipAnalysis out;
  for (const WindowedFrame& frame : frame_signal(clip, framing)) {
    std::vector<double> r = autocorrelate(frame.values, lpc.order);
    if (r[0] <= 0.0) {
      ++out.skipped_frames;
      continue;
    }
    LpcModel model;
    try {
      model = levinson_durbin(r, lpc.order);
    } catch (const NumericError&) {
      ++out.skipped_frames;
      continue;
    }
    out.features.push_back(lpc_to_cepstrum(model, lpc.cepstrum_len));
    out.models.push_back(std::move(model));
    out.frame_offsets.push_back(frame.start_index);
  }
  if (out.features.empty()) {
    throw NoUsableFrames("analyze_clip: no usable frames (all frames silent or degenerate)");
  }
  return out;
}

}  // namespace zharec

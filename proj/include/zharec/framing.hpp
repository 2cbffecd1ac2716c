// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Preemphasis, windowing, and frame slicing for the analysis front end.

#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "zharec/errors.hpp"
#include "zharec/wav.hpp"

namespace zharec {

enum class WindowType { kHamming, kRectangular };

struct FramingConfig {
  int frame_len = 512;       // samples per frame
  int hop = 256;             // samples between frame starts
  WindowType window = WindowType::kHamming;
  double preemphasis = 0.97;  // 0 disables
};

inline void validate(const FramingConfig& cfg) {
  if (cfg.frame_len < 2) throw InvalidConfig("framing: frame_len must be >= 2");
  if (cfg.hop <= 0 || cfg.hop > cfg.frame_len) {
    throw InvalidConfig("framing: hop must satisfy 0 < hop <= frame_len");
  }
  if (cfg.preemphasis < 0.0 || cfg.preemphasis >= 1.0) {
    throw InvalidConfig("framing: preemphasis must lie in [0, 1)");
  }
}

// One analysis frame after preemphasis and windowing.
struct WindowedFrame {
  std::vector<double> values;
  std::size_t start_index = 0;  // sample offset into the source clip
};

// w[n] = 0.54 - 0.46*cos(2*pi*n/(length-1)). The upper half is mirrored from
// the lower half so w[n] == w[length-1-n] holds exactly.
inline std::vector<double> hamming_window(int length) {
  if (length < 2) throw InvalidLength("hamming_window: length must be >= 2");
  std::vector<double> w(static_cast<std::size_t>(length));
  const double step = 6.283185307179586476925287 / (length - 1);
  for (int n = 0; n < (length + 1) / 2; ++n) {
    double v = 0.54 - 0.46 * std::cos(step * n);
    w[static_cast<std::size_t>(n)] = v;
    w[static_cast<std::size_t>(length - 1 - n)] = v;
  }
  return w;
}

// y[n] = x[n] - alpha*x[n-1], with y[0] = x[0].
inline std::vector<double> preemphasize(const std::vector<double>& x, double alpha) {
  std::vector<double> y(x.size());
  if (x.empty()) return y;
  y[0] = x[0];
  for (std::size_t n = 1; n < x.size(); ++n) y[n] = x[n] - alpha * x[n - 1];
  return y;
}

// Number of full frames a signal of `len` samples yields; trailing partial
// frames are discarded.
inline std::size_t frame_count(std::size_t len, int frame_len, int hop) {
  if (len < static_cast<std::size_t>(frame_len)) return 0;
  return (len - static_cast<std::size_t>(frame_len)) / static_cast<std::size_t>(hop) + 1;
}

// Preemphasizes the whole clip, then cuts windowed frames at offsets
// 0, hop, 2*hop, ... while a full frame fits.
inline std::vector<WindowedFrame> frame_signal(const AudioClip& clip, const FramingConfig& cfg) {
  validate(cfg);
  if (clip.samples.size() < static_cast<std::size_t>(cfg.frame_len)) {
    throw ClipTooShort("frame_signal: clip has " + std::to_string(clip.samples.size()) +
                       " samples, need at least " + std::to_string(cfg.frame_len));
  }

  const std::vector<double> y =
      cfg.preemphasis != 0.0 ? preemphasize(clip.samples, cfg.preemphasis) : clip.samples;

  std::vector<double> window;
  if (cfg.window == WindowType::kHamming) window = hamming_window(cfg.frame_len);

  const std::size_t count = frame_count(y.size(), cfg.frame_len, cfg.hop);
  std::vector<WindowedFrame> frames;
  frames.reserve(count);
  for (std::size_t f = 0; f < count; ++f) {
    WindowedFrame frame;
    frame.start_index = f * static_cast<std::size_t>(cfg.hop);
    frame.values.resize(static_cast<std::size_t>(cfg.frame_len));
    for (int n = 0; n < cfg.frame_len; ++n) {
      double v = y[frame.start_index + static_cast<std::size_t>(n)];
      if (!window.empty()) v *= window[static_cast<std::size_t>(n)];
      frame.values[static_cast<std::size_t>(n)] = v;
    }
    frames.push_back(std::move(frame));
  }
  return frames;
}

}  // namespace zharec

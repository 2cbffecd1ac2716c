// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#pragma once

#include <cmath>
#include <cstdint>
#include <random>
#include <span>

namespace zharec {

// Seeded random source with bit-reproducible output across platforms.
// std::uniform_real_distribution and std::discrete_distribution leave their
// algorithms implementation-defined, so unit doubles and categorical draws
// are derived from raw mt19937_64 words instead.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t raw() { return engine_(); }

  // Uniform in [0, 1), 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  // Uniform in [lo, hi).
  double range(double lo, double hi) { return lo + (hi - lo) * unit(); }

  // Standard normal via Box-Muller (one value per call, no caching, so the
  // draw count stays predictable).
  double gaussian() {
    double u1 = unit();
    double u2 = unit();
    if (u1 == 0.0) u1 = 0x1.0p-53;
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925287 * u2);
  }

  // Index drawn from an unnormalized discrete distribution. The final
  // nonzero-weight index absorbs rounding slack so the walk cannot fall off
  // the end.
  int categorical(std::span<const double> weights) {
    double total = 0.0;
    for (double w : weights) total += w;
    double u = unit() * total;
    double cum = 0.0;
    int last_nonzero = 0;
    for (int i = 0; i < static_cast<int>(weights.size()); ++i) {
      if (weights[i] <= 0.0) continue;
      last_nonzero = i;
      cum += weights[i];
      if (u < cum) return i;
    }
    return last_nonzero;
  }

  // Derive an independent stream, e.g. one per training class.
  static std::uint64_t mix(std::uint64_t seed, std::uint64_t stream) {
    // splitmix64 finalizer
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

 private:
  std::mt19937_64 engine_;
};

}  // namespace zharec

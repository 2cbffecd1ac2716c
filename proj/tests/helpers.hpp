// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Test-only helpers: independent oracles, random instance generators, and
// scratch-directory plumbing. Nothing here may call back into the
// implementation paths it is used to check.

#pragma once

#include <unistd.h>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "zharec/hmm.hpp"
#include "zharec/lpc.hpp"
#include "zharec/rng.hpp"

#ifndef M_PI
#define M_PI 3.14159265358979323846
#endif

namespace testutil {

// -- linear algebra oracle ----------------------------------------------

// Solves the dense p x p system T x = rhs with T[i][j] = r[|i-j|] and
// rhs[i] = r[i+1] by Gaussian elimination with partial pivoting. Slow,
// obvious, and independent of the Levinson-Durbin recursion.
inline std::vector<double> dense_toeplitz_solve(const std::vector<double>& r, int order) {
  const int p = order;
  std::vector<std::vector<double>> a(static_cast<std::size_t>(p),
                                     std::vector<double>(static_cast<std::size_t>(p) + 1));
  for (int i = 0; i < p; ++i) {
    for (int j = 0; j < p; ++j) a[i][j] = r[static_cast<std::size_t>(std::abs(i - j))];
    a[i][static_cast<std::size_t>(p)] = r[static_cast<std::size_t>(i) + 1];
  }
  for (int col = 0; col < p; ++col) {
    int pivot = col;
    for (int row = col + 1; row < p; ++row) {
      if (std::abs(a[row][col]) > std::abs(a[pivot][col])) pivot = row;
    }
    std::swap(a[col], a[pivot]);
    if (a[col][col] == 0.0) throw std::runtime_error("dense_toeplitz_solve: singular system");
    for (int row = col + 1; row < p; ++row) {
      const double f = a[row][col] / a[col][col];
      for (int j = col; j <= p; ++j) a[row][j] -= f * a[col][j];
    }
  }
  std::vector<double> x(static_cast<std::size_t>(p));
  for (int i = p - 1; i >= 0; --i) {
    double acc = a[i][static_cast<std::size_t>(p)];
    for (int j = i + 1; j < p; ++j) acc -= a[i][j] * x[static_cast<std::size_t>(j)];
    x[static_cast<std::size_t>(i)] = acc / a[i][i];
  }
  return x;
}

// -- cepstrum oracle -----------------------------------------------------

// Cepstral coefficients of H(z) = gain/A(z) by numerical Fourier analysis
// of the log magnitude spectrum on a dense grid:
//   c_n = (2/L) sum_m ln|H(w_m)| cos(n w_m),  w_m = 2 pi m / L.
// The aliasing error decays like rho^grid for maximum pole radius rho;
// grid 16384 is exact to rounding for rho <= 0.97.
inline std::vector<double> numeric_cepstrum(const zharec::LpcModel& model, int q_len,
                                            int grid = 16384) {
  std::vector<double> log_mag(static_cast<std::size_t>(grid));
  for (int m = 0; m < grid; ++m) {
    const double w = 2.0 * M_PI * m / grid;
    double re = 1.0, im = 0.0;
    for (std::size_t k = 0; k < model.coeffs.size(); ++k) {
      re -= model.coeffs[k] * std::cos((k + 1) * w);
      im += model.coeffs[k] * std::sin((k + 1) * w);
    }
    log_mag[static_cast<std::size_t>(m)] = std::log(model.gain) - 0.5 * std::log(re * re + im * im);
  }
  std::vector<double> c(static_cast<std::size_t>(q_len));
  for (int n = 1; n <= q_len; ++n) {
    double acc = 0.0;
    for (int m = 0; m < grid; ++m) acc += log_mag[static_cast<std::size_t>(m)] * std::cos(n * (2.0 * M_PI * m / grid));
    c[static_cast<std::size_t>(n - 1)] = 2.0 * acc / grid;
  }
  return c;
}

// -- model generators ----------------------------------------------------

// Step-up recursion: predictor coefficients from reflection coefficients.
// |k_i| < 1 for all i guarantees a stable all-pole filter.
inline std::vector<double> coeffs_from_reflection(const std::vector<double>& k) {
  std::vector<double> a;
  for (std::size_t i = 0; i < k.size(); ++i) {
    std::vector<double> next(i + 1);
    for (std::size_t j = 0; j < i; ++j) next[j] = a[j] - k[i] * a[i - 1 - j];
    next[i] = k[i];
    a = std::move(next);
  }
  return a;
}

// Random stable all-pole model built from explicit pole pairs with radius
// bounded away from the unit circle (reflection-coefficient sampling can
// place poles at radius 0.9999+, which defeats any practical quadrature).
inline zharec::LpcModel random_stable_model(int order, zharec::Rng& rng,
                                            double max_radius = 0.97) {
  std::vector<double> a_poly = {1.0};  // A(z) in powers of z^-1
  auto multiply = [&a_poly](const std::vector<double>& factor) {
    std::vector<double> out(a_poly.size() + factor.size() - 1, 0.0);
    for (std::size_t i = 0; i < a_poly.size(); ++i) {
      for (std::size_t j = 0; j < factor.size(); ++j) out[i + j] += a_poly[i] * factor[j];
    }
    a_poly = std::move(out);
  };

  int remaining = order;
  if (remaining % 2 == 1) {
    multiply({1.0, -rng.range(-0.9, 0.9)});  // one real pole
    --remaining;
  }
  for (; remaining > 0; remaining -= 2) {
    const double r = rng.range(0.3, max_radius);
    const double theta = rng.range(0.05, M_PI - 0.05);
    multiply({1.0, -2.0 * r * std::cos(theta), r * r});
  }

  zharec::LpcModel model;
  model.coeffs.resize(static_cast<std::size_t>(order));
  for (int k = 1; k <= order; ++k) {
    model.coeffs[static_cast<std::size_t>(k - 1)] = -a_poly[static_cast<std::size_t>(k)];
  }
  model.gain = 1.0;
  model.error_energy = 1.0;
  return model;
}

inline zharec::HmmModel random_model(int n_states, int n_symbols, zharec::Rng& rng) {
  auto random_row = [&rng](int len) {
    std::vector<double> row(static_cast<std::size_t>(len));
    double sum = 0.0;
    for (double& v : row) {
      v = 0.05 + rng.unit();
      sum += v;
    }
    for (double& v : row) v /= sum;
    return row;
  };
  zharec::HmmModel m;
  m.pi = random_row(n_states);
  for (int i = 0; i < n_states; ++i) m.trans.push_back(random_row(n_states));
  for (int i = 0; i < n_states; ++i) m.emit.push_back(random_row(n_symbols));
  return m;
}

inline zharec::ObservationSequence random_observations(int t_len, int n_symbols,
                                                       zharec::Rng& rng) {
  zharec::ObservationSequence obs(static_cast<std::size_t>(t_len));
  for (int& o : obs) o = static_cast<int>(rng.raw() % static_cast<std::uint64_t>(n_symbols));
  return obs;
}

// -- synthetic signals ----------------------------------------------------

// White-noise-driven AR(2) resonator with a conjugate pole pair.
inline std::vector<double> ar2_signal(int n, double pole_hz, double radius, int sample_rate_hz,
                                      std::uint64_t seed) {
  zharec::Rng rng(seed);
  const double theta = 2.0 * M_PI * pole_hz / sample_rate_hz;
  const double a1 = 2.0 * radius * std::cos(theta);
  const double a2 = -radius * radius;
  std::vector<double> x(static_cast<std::size_t>(n));
  double y1 = 0.0, y2 = 0.0;
  for (double& v : x) {
    const double y = rng.gaussian() + a1 * y1 + a2 * y2;
    y2 = y1;
    y1 = y;
    v = y;
  }
  double peak = 0.0;
  for (double v : x) peak = std::max(peak, std::abs(v));
  if (peak > 0.0) {
    for (double& v : x) v *= 0.5 / peak;
  }
  return x;
}

// -- misc ------------------------------------------------------------------

// FNV-1a over the raw bytes of doubles; used for bit-exact determinism
// fingerprints.
struct Fingerprint {
  std::uint64_t hash = 1469598103934665603ULL;

  void add_bytes(const void* data, std::size_t len) {
    const unsigned char* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < len; ++i) {
      hash ^= p[i];
      hash *= 1099511628211ULL;
    }
  }
  void add(double v) { add_bytes(&v, sizeof v); }
  void add(int v) { add_bytes(&v, sizeof v); }
  void add(const std::vector<double>& vs) {
    for (double v : vs) add(v);
  }
  void add(const std::vector<std::vector<double>>& m) {
    for (const auto& row : m) add(row);
  }
  void add(const std::string& s) { add_bytes(s.data(), s.size()); }
};

// Scratch directory, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    path_ = std::filesystem::temp_directory_path() /
            ("zharec_" + tag + "_" + std::to_string(::getpid()));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }
  std::string file(const std::string& name) const { return (path_ / name).string(); }

 private:
  std::filesystem::path path_;
};

inline void write_bytes(const std::string& path, const std::vector<unsigned char>& bytes) {
  std::ofstream out(path, std::ios::binary);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

// Minimal WAV container around raw sample bytes, for crafting inputs the
// public writer cannot produce (stereo, float, odd encodings).
inline std::vector<unsigned char> craft_wav(std::uint16_t format, std::uint16_t channels,
                                            std::uint32_t rate, std::uint16_t bits,
                                            const std::vector<unsigned char>& data) {
  std::vector<unsigned char> b;
  auto u32 = [&b](std::uint32_t v) {
    b.push_back(v & 0xff);
    b.push_back((v >> 8) & 0xff);
    b.push_back((v >> 16) & 0xff);
    b.push_back((v >> 24) & 0xff);
  };
  auto u16 = [&b](std::uint16_t v) {
    b.push_back(v & 0xff);
    b.push_back((v >> 8) & 0xff);
  };
  auto tag = [&b](const char* t) { b.insert(b.end(), t, t + 4); };

  tag("RIFF");
  u32(static_cast<std::uint32_t>(36 + data.size()));
  tag("WAVE");
  tag("fmt ");
  u32(16);
  u16(format);
  u16(channels);
  u32(rate);
  u32(rate * channels * bits / 8);
  u16(static_cast<std::uint16_t>(channels * bits / 8));
  u16(bits);
  tag("data");
  u32(static_cast<std::uint32_t>(data.size()));
  b.insert(b.end(), data.begin(), data.end());
  return b;
}

}  // namespace testutil

// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// LBG codebook training and nearest-centroid quantization. This is the
// bridge from continuous cepstral vectors to the discrete symbol alphabet
// the HMMs emit over.

#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "zharec/errors.hpp"
#include "zharec/lpc.hpp"

namespace zharec {

struct Codebook {
  std::vector<std::vector<double>> centroids;  // M x Q

  std::size_t size() const { return centroids.size(); }
  std::size_t dim() const { return centroids.empty() ? 0 : centroids.front().size(); }
};

namespace detail {

inline double squared_distance(std::span<const double> a, std::span<const double> b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

// Nearest centroid index, ties broken toward the lowest index.
inline int nearest_centroid(std::span<const double> v, const Codebook& cb) {
  int best = 0;
  double best_dist = std::numeric_limits<double>::infinity();
  for (std::size_t m = 0; m < cb.centroids.size(); ++m) {
    const double d = squared_distance(v, cb.centroids[m]);
    if (d < best_dist) {
      best_dist = d;
      best = static_cast<int>(m);
    }
  }
  return best;
}

}  // namespace detail

// Trains an M-entry codebook by LBG splitting: start from the global mean,
// split centroids by a +/- 1e-3 perturbation, and refine with k-means
// (squared Euclidean) until the relative distortion change drops below 1e-6
// or 100 iterations pass. Empty cells are re-seeded from the point farthest
// from its centroid. The procedure is fully deterministic; `seed` is part
// of the trainer interface and reserved for stochastic initializations.
//
// `distortion_trace`, when given, receives one inner vector per k-means run
// (runs are separated by splits) holding the mean squared distortion after
// every assignment step; each inner vector is non-increasing.
inline Codebook train_codebook(const std::vector<CepstralVector>& features, int size,
                               std::uint64_t seed,
                               std::vector<std::vector<double>>* distortion_trace = nullptr) {
  (void)seed;
  if (size < 1) throw InvalidConfig("train_codebook: size must be >= 1");
  if (features.size() < static_cast<std::size_t>(size)) {
    throw TooFewVectors("train_codebook: " + std::to_string(features.size()) +
                        " vectors, need at least " + std::to_string(size));
  }
  const std::size_t dim = features.front().size();
  if (dim == 0) throw DimensionMismatch("train_codebook: zero-dimensional features");
  for (const CepstralVector& v : features) {
    if (v.size() != dim) throw DimensionMismatch("train_codebook: inconsistent feature dimensions");
  }

  constexpr double kSplitEpsilon = 1e-3;
  constexpr double kRelTol = 1e-6;
  constexpr int kMaxIters = 100;

  Codebook cb;
  {
    std::vector<double> mean(dim, 0.0);
    for (const CepstralVector& v : features) {
      for (std::size_t i = 0; i < dim; ++i) mean[i] += v[i];
    }
    for (double& x : mean) x /= static_cast<double>(features.size());
    cb.centroids.push_back(std::move(mean));
  }

  std::vector<int> assignment(features.size(), 0);
  std::vector<double> point_dist(features.size(), 0.0);

  // Assigns every point to its nearest centroid and returns the mean
  // squared distortion.
  auto assign_pass = [&]() {
    double distortion = 0.0;
    for (std::size_t n = 0; n < features.size(); ++n) {
      const int m = detail::nearest_centroid(features[n], cb);
      assignment[n] = m;
      point_dist[n] = detail::squared_distance(features[n], cb.centroids[static_cast<std::size_t>(m)]);
      distortion += point_dist[n];
    }
    distortion /= static_cast<double>(features.size());
    if (distortion_trace) distortion_trace->back().push_back(distortion);
    return distortion;
  };

  // Replaces each centroid with its cell mean; empty cells are re-seeded
  // from the unclaimed point farthest from its centroid (ties toward the
  // lowest point index).
  auto update_pass = [&]() {
    std::vector<std::vector<double>> sums(cb.size(), std::vector<double>(dim, 0.0));
    std::vector<std::size_t> counts(cb.size(), 0);
    for (std::size_t n = 0; n < features.size(); ++n) {
      const std::size_t m = static_cast<std::size_t>(assignment[n]);
      ++counts[m];
      for (std::size_t i = 0; i < dim; ++i) sums[m][i] += features[n][i];
    }
    std::vector<char> claimed(features.size(), 0);
    for (std::size_t m = 0; m < cb.size(); ++m) {
      if (counts[m] > 0) {
        for (std::size_t i = 0; i < dim; ++i) cb.centroids[m][i] = sums[m][i] / static_cast<double>(counts[m]);
      } else {
        std::size_t far_n = 0;
        double far_d = -1.0;
        for (std::size_t n = 0; n < features.size(); ++n) {
          if (!claimed[n] && point_dist[n] > far_d) {
            far_d = point_dist[n];
            far_n = n;
          }
        }
        claimed[far_n] = 1;
        cb.centroids[m] = features[far_n];
      }
    }
  };

  // One k-means run to convergence; always leaves assignment/point_dist in
  // sync with the current centroids.
  auto refine = [&]() {
    if (distortion_trace) distortion_trace->emplace_back();
    double distortion = assign_pass();
    for (int iter = 0; iter < kMaxIters; ++iter) {
      update_pass();
      const double next = assign_pass();
      const bool converged = distortion - next < kRelTol * std::max(distortion, 1e-300);
      distortion = next;
      if (converged) break;
    }
  };

  refine();
  while (static_cast<int>(cb.size()) < size) {
    // Split the highest-distortion cells first when only part of the
    // codebook may grow (ties toward the lowest centroid index).
    const std::size_t n_split =
        std::min(cb.size(), static_cast<std::size_t>(size) - cb.size());
    std::vector<double> cell_distortion(cb.size(), 0.0);
    for (std::size_t n = 0; n < features.size(); ++n) {
      cell_distortion[static_cast<std::size_t>(assignment[n])] += point_dist[n];
    }
    std::vector<std::size_t> order(cb.size());
    for (std::size_t m = 0; m < order.size(); ++m) order[m] = m;
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return cell_distortion[a] > cell_distortion[b];
    });

    for (std::size_t s = 0; s < n_split; ++s) {
      const std::size_t m = order[s];
      std::vector<double> lo = cb.centroids[m];
      for (std::size_t i = 0; i < dim; ++i) {
        cb.centroids[m][i] += kSplitEpsilon;
        lo[i] -= kSplitEpsilon;
      }
      cb.centroids.push_back(std::move(lo));
    }
    refine();
  }
  return cb;
}

// Maps each vector to the index of its nearest centroid. Output length
// equals input length; ties break toward the lowest index.
inline std::vector<int> quantize(const std::vector<CepstralVector>& features, const Codebook& cb) {
  std::vector<int> symbols;
  symbols.reserve(features.size());
  for (const CepstralVector& v : features) {
    if (v.size() != cb.dim()) {
      throw DimensionMismatch("quantize: feature dimension " + std::to_string(v.size()) +
                              " != codebook dimension " + std::to_string(cb.dim()));
    }
    symbols.push_back(detail::nearest_centroid(v, cb));
  }
  return symbols;
}

}  // namespace zharec

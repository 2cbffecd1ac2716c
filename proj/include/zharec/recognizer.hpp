// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Isolated-phoneme recognition: one discrete HMM per class over a shared
// codebook, trained by maximum likelihood, applied by picking the class
// whose model scores the unknown utterance highest.

#pragma once

#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "zharec/errors.hpp"
#include "zharec/hmm.hpp"
#include "zharec/lpc.hpp"
#include "zharec/vq.hpp"
#include "zharec/wav.hpp"

namespace zharec {

struct FrontEndConfig {
  FramingConfig framing;
  LpcConfig lpc;
};

enum class Topology { kErgodic, kLeftToRight };

struct TrainerConfig {
  FrontEndConfig front_end;
  int codebook_size = 64;
  int n_states = 3;
  Topology topology = Topology::kErgodic;
  int max_iters = 100;
  double tol = 1e-4;
};

// L labeled models plus the shared codebook and the front end they were
// trained with. Immutable once trained; safe to share across threads.
struct ClassifierBank {
  std::vector<std::string> classes;  // unique labels, first-appearance order
  std::vector<HmmModel> models;      // parallel to classes
  Codebook codebook;
  FrontEndConfig front_end;
};

struct ClassificationResult {
  std::string predicted;
  std::vector<double> log_likelihoods;            // raw log P(O | model_i), bank order
  std::vector<double> per_frame_log_likelihoods;  // raw / T, for human inspection
  double margin = 0.0;                            // best minus second-best raw
};

// Per-class training summary, filled in by train_bank on request.
struct ClassTrainingInfo {
  std::string label;
  int iterations = 0;
  double final_log_likelihood = 0.0;
};

namespace detail {

inline ClipAnalysis analyze_or_rethrow(const AudioClip& clip, const FrontEndConfig& fe,
                                       const std::string& what) {
  try {
    return analyze_clip(clip, fe.framing, fe.lpc);
  } catch (const NoUsableFrames&) {
    throw NoUsableFrames("no usable frames in " + what);
  }
}

}  // namespace detail

// Trains a classifier bank: the codebook on the pooled cepstra of every
// class, then one HMM per class on that class's quantized sequences.
// Deterministic for a fixed seed; per-class training streams are derived
// with Rng::mix so class order does not perturb each other's draws.
inline ClassifierBank train_bank(const std::vector<AudioClip>& labeled_clips,
                                 const TrainerConfig& config, std::uint64_t seed,
                                 std::vector<ClassTrainingInfo>* training_info = nullptr) {
  // Validate the whole configuration before touching any audio.
  validate(config.front_end.framing);
  validate(config.front_end.lpc, config.front_end.framing.frame_len);
  if (config.n_states < 1) throw InvalidConfig("train_bank: n_states must be >= 1");
  if (config.codebook_size < 1) throw InvalidConfig("train_bank: codebook_size must be >= 1");
  if (config.max_iters < 1) throw InvalidConfig("train_bank: max_iters must be >= 1");
  if (!(config.tol > 0.0)) throw InvalidConfig("train_bank: tol must be positive");

  ClassifierBank bank;
  bank.front_end = config.front_end;

  std::vector<int> class_of_clip(labeled_clips.size(), -1);
  for (std::size_t c = 0; c < labeled_clips.size(); ++c) {
    const std::string& label = labeled_clips[c].label;
    if (label.empty()) throw EmptyClass("train_bank: clip #" + std::to_string(c) + " has no label");
    int idx = -1;
    for (std::size_t k = 0; k < bank.classes.size(); ++k) {
      if (bank.classes[k] == label) {
        idx = static_cast<int>(k);
        break;
      }
    }
    if (idx < 0) {
      idx = static_cast<int>(bank.classes.size());
      bank.classes.push_back(label);
    }
    class_of_clip[c] = idx;
  }
  if (bank.classes.size() < 2) {
    throw InsufficientClasses("train_bank: need at least 2 classes, got " +
                              std::to_string(bank.classes.size()));
  }

  // Front end over every clip; pool features for the shared codebook.
  std::vector<CepstralVector> pooled;
  std::vector<std::vector<CepstralVector>> per_clip_features(labeled_clips.size());
  for (std::size_t c = 0; c < labeled_clips.size(); ++c) {
    ClipAnalysis analysis = detail::analyze_or_rethrow(
        labeled_clips[c], config.front_end,
        "training clip #" + std::to_string(c) + " (label \"" + labeled_clips[c].label + "\")");
    pooled.insert(pooled.end(), analysis.features.begin(), analysis.features.end());
    per_clip_features[c] = std::move(analysis.features);
  }

  bank.codebook = train_codebook(pooled, config.codebook_size, seed);

  // Quantized training sequences per class.
  std::vector<std::vector<ObservationSequence>> sequences(bank.classes.size());
  for (std::size_t c = 0; c < labeled_clips.size(); ++c) {
    sequences[static_cast<std::size_t>(class_of_clip[c])].push_back(
        quantize(per_clip_features[c], bank.codebook));
  }

  const TransitionMask mask = config.topology == Topology::kErgodic
                                  ? TransitionMask::ergodic(config.n_states)
                                  : TransitionMask::left_to_right(config.n_states);
  bank.models.reserve(bank.classes.size());
  for (std::size_t k = 0; k < bank.classes.size(); ++k) {
    if (sequences[k].empty()) {
      throw EmptyClass("train_bank: class \"" + bank.classes[k] + "\" has no usable clips");
    }
    const HmmModel init =
        make_initial_model(config.n_states, config.codebook_size, mask, Rng::mix(seed, k));
    BaumWelchResult trained = baum_welch(init, sequences[k], config.max_iters, config.tol);
    if (training_info) {
      training_info->push_back({bank.classes[k],
                                static_cast<int>(trained.log_likelihood_trace.size()),
                                trained.log_likelihood_trace.back()});
    }
    bank.models.push_back(std::move(trained.model));
  }
  return bank;
}

// Scores a clip against every class model and returns the argmax. The
// decision uses raw log-likelihoods (every model scores the same symbol
// sequence, so lengths are comparable); per-frame values are informational.
// Ties break toward the lowest class index.
inline ClassificationResult classify(const ClassifierBank& bank, const AudioClip& clip) {
  const ClipAnalysis analysis = detail::analyze_or_rethrow(clip, bank.front_end, "input clip");
  const ObservationSequence obs = quantize(analysis.features, bank.codebook);

  ClassificationResult result;
  result.log_likelihoods.reserve(bank.models.size());
  for (const HmmModel& model : bank.models) {
    result.log_likelihoods.push_back(forward(model, obs).log_likelihood);
  }
  result.per_frame_log_likelihoods = result.log_likelihoods;
  for (double& v : result.per_frame_log_likelihoods) v /= static_cast<double>(obs.size());

  std::size_t best = 0;
  for (std::size_t k = 1; k < result.log_likelihoods.size(); ++k) {
    if (result.log_likelihoods[k] > result.log_likelihoods[best]) best = k;
  }
  double second = -std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < result.log_likelihoods.size(); ++k) {
    if (k != best && result.log_likelihoods[k] > second) second = result.log_likelihoods[k];
  }
  result.predicted = bank.classes[best];
  result.margin = result.log_likelihoods[best] - second;
  if (std::isnan(result.margin)) result.margin = 0.0;  // -inf vs -inf: a full tie
  return result;
}

struct EvaluationReport {
  std::vector<std::string> classes;        // bank order
  std::vector<std::vector<int>> confusion; // rows = truth, columns = prediction
  int total = 0;
  double accuracy = 0.0;
};

// Runs classify over a labeled collection and tallies the confusion matrix.
// Every clip's label must be one of the bank's classes.
inline EvaluationReport evaluate(const ClassifierBank& bank,
                                 const std::vector<AudioClip>& labeled_clips) {
  if (labeled_clips.empty()) throw EmptyEvaluationSet("evaluate: empty evaluation set");

  EvaluationReport report;
  report.classes = bank.classes;
  report.confusion.assign(bank.classes.size(), std::vector<int>(bank.classes.size(), 0));

  int correct = 0;
  for (const AudioClip& clip : labeled_clips) {
    int truth = -1;
    for (std::size_t k = 0; k < bank.classes.size(); ++k) {
      if (bank.classes[k] == clip.label) {
        truth = static_cast<int>(k);
        break;
      }
    }
    if (truth < 0) {
      throw DataError("evaluate: label \"" + clip.label + "\" is not a class of this bank");
    }
    const ClassificationResult r = classify(bank, clip);
    int predicted = 0;
    for (std::size_t k = 0; k < bank.classes.size(); ++k) {
      if (bank.classes[k] == r.predicted) {
        predicted = static_cast<int>(k);
        break;
      }
    }
    ++report.confusion[static_cast<std::size_t>(truth)][static_cast<std::size_t>(predicted)];
    if (truth == predicted) ++correct;
    ++report.total;
  }
  report.accuracy = static_cast<double>(correct) / report.total;
  return report;
}

}  // namespace zharec

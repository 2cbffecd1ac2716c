// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0

#include <algorithm>
#include <cmath>
#include <vector>

#include <gtest/gtest.h>

#include "helpers.hpp"
#include "zharec/hmm.hpp"

using zharec::HmmModel;
using zharec::ObservationSequence;
using zharec::StateSequence;

namespace {

// pi = [1, 0], the worked two-state example used across several tests.
HmmModel two_state_model() {
  HmmModel m;
  m.pi = {1.0, 0.0};
  m.trans = {{0.7, 0.3}, {0.4, 0.6}};
  m.emit = {{0.9, 0.1}, {0.2, 0.8}};
  return m;
}

HmmModel single_state_model(std::vector<double> emissions) {
  HmmModel m;
  m.pi = {1.0};
  m.trans = {{1.0}};
  m.emit = {std::move(emissions)};
  return m;
}

HmmModel uniform_model(int n, int m) {
  HmmModel model;
  model.pi.assign(static_cast<std::size_t>(n), 1.0 / n);
  model.trans.assign(static_cast<std::size_t>(n),
                     std::vector<double>(static_cast<std::size_t>(n), 1.0 / n));
  model.emit.assign(static_cast<std::size_t>(n),
                    std::vector<double>(static_cast<std::size_t>(m), 1.0 / m));
  return model;
}

// Exhaustive argmax over all N^{T+1} state sequences, independent of the
// Viterbi implementation.
std::pair<StateSequence, double> exhaustive_best_path(const HmmModel& model,
                                                      const ObservationSequence& obs) {
  const int n = model.n_states();
  StateSequence q(obs.size() + 1, 0);
  StateSequence best_q = q;
  double best_p = -1.0;
  while (true) {
    const double p = zharec::joint_probability(model, q, obs);
    if (p > best_p) {
      best_p = p;
      best_q = q;
    }
    std::size_t d = 0;
    while (d < q.size() && ++q[d] == n) q[d++] = 0;
    if (d == q.size()) break;
  }
  return {best_q, best_p};
}

}  // namespace

TEST(StateSequenceProbability, SingleStateIsAlwaysOne) {
  const HmmModel m = single_state_model({1.0});
  EXPECT_EQ(zharec::state_sequence_probability(m, {0, 0, 0, 0, 0}), 1.0);
}

TEST(StateSequenceProbability, WorkedExamples) {
  const HmmModel m = two_state_model();
  EXPECT_DOUBLE_EQ(zharec::state_sequence_probability(m, {0, 1}), 0.3);
  EXPECT_DOUBLE_EQ(zharec::state_sequence_probability(m, {0, 1, 0}), 0.12);
}

TEST(StateSequenceProbability, RejectsBadState) {
  const HmmModel m = two_state_model();
  EXPECT_THROW(zharec::state_sequence_probability(m, {0, 2}), zharec::IndexOutOfRange);
}

TEST(JointProbability, EmissionZeroAnnihilates) {
  HmmModel m = two_state_model();
  m.emit = {{1.0, 0.0}, {0.2, 0.8}};
  EXPECT_EQ(zharec::joint_probability(m, {0, 0, 0}, {0, 1}), 0.0);
}

TEST(JointProbability, SingleStateEmissionProduct) {
  const HmmModel m = single_state_model({0.9, 0.1});
  EXPECT_DOUBLE_EQ(zharec::joint_probability(m, {0, 0, 0, 0}, {0, 0, 1}), 0.9 * 0.9 * 0.1);
}

TEST(JointProbability, FactorsIntoPathAndEmissionParts) {
  zharec::Rng rng(401);
  const HmmModel m = testutil::random_model(2, 3, rng);
  const StateSequence q = {1, 0, 1, 1};
  const ObservationSequence obs = {2, 0, 1};

  double emission_product = 1.0;
  for (std::size_t t = 0; t < obs.size(); ++t) {
    emission_product *= m.emit[static_cast<std::size_t>(q[t + 1])][static_cast<std::size_t>(obs[t])];
  }
  const double expected = zharec::state_sequence_probability(m, q) * emission_product;
  EXPECT_NEAR(zharec::joint_probability(m, q, obs), expected, 1e-15);
}

TEST(JointProbability, RejectsLengthMismatch) {
  const HmmModel m = two_state_model();
  EXPECT_THROW(zharec::joint_probability(m, {0, 0}, {0, 1}), zharec::LengthMismatch);
}

TEST(EvaluateDirect, SingleStateDegeneratesToEmissionProduct) {
  const HmmModel m = single_state_model({0.3, 0.7});
  EXPECT_NEAR(zharec::evaluate_direct(m, {1, 1, 0}), 0.7 * 0.7 * 0.3, 1e-15);
}

TEST(EvaluateDirect, UniformModelGivesUniformObservationLaw) {
  const HmmModel m = uniform_model(3, 4);
  const ObservationSequence obs = {0, 3, 2, 1, 1};
  EXPECT_NEAR(zharec::evaluate_direct(m, obs), std::pow(4.0, -5.0), 1e-15);
}

TEST(EvaluateDirect, GuardsAgainstExponentialBlowup) {
  const HmmModel m = uniform_model(10, 2);
  const ObservationSequence obs(8, 0);  // 10^9 paths
  EXPECT_THROW(zharec::evaluate_direct(m, obs), zharec::SequenceTooLong);
}

TEST(Forward, SingleStateLogLikelihood) {
  const HmmModel m = single_state_model({0.25, 0.75});
  const ObservationSequence obs = {0, 1, 1, 0};
  const auto lattice = zharec::forward(m, obs);
  EXPECT_NEAR(lattice.log_likelihood,
              2.0 * std::log(0.25) + 2.0 * std::log(0.75), 1e-12);
}

TEST(Forward, HandEnumeratedTwoStateExample) {
  // With pi = [1, 0] and one observation o = 0:
  //   q_0 = 0 -> q_1 = 0: 1 * 0.7 * 0.9 = 0.63
  //   q_0 = 0 -> q_1 = 1: 1 * 0.3 * 0.2 = 0.06
  //   q_0 = 1 contributes 0. Total = 0.69.
  const HmmModel m = two_state_model();
  const auto lattice = zharec::forward(m, {0});
  EXPECT_NEAR(std::exp(lattice.log_likelihood), 0.69, 1e-12);
}

TEST(Forward, LatticeRowZeroHoldsLogPi) {
  const HmmModel m = two_state_model();
  const auto lattice = zharec::forward(m, {0, 1});
  EXPECT_EQ(lattice.log_alpha.size(), 3u);
  EXPECT_EQ(lattice.log_alpha[0][0], 0.0);  // log 1
  EXPECT_TRUE(std::isinf(lattice.log_alpha[0][1]));
}

TEST(Forward, LogLikelihoodIsLogsumexpOfLastRowExactly) {
  zharec::Rng rng(402);
  for (int trial = 0; trial < 20; ++trial) {
    const HmmModel m = testutil::random_model(3, 5, rng);
    const auto obs = testutil::random_observations(12, 5, rng);
    const auto lattice = zharec::forward(m, obs);
    double hi = -std::numeric_limits<double>::infinity();
    for (double v : lattice.log_alpha.back()) hi = std::max(hi, v);
    double acc = 0.0;
    for (double v : lattice.log_alpha.back()) acc += std::exp(v - hi);
    ASSERT_EQ(lattice.log_likelihood, hi + std::log(acc));
  }
}

TEST(Forward, MatchesBruteForceOracle) {
  zharec::Rng rng(403);
  for (int trial = 0; trial < 100; ++trial) {
    const HmmModel m = testutil::random_model(3, 8, rng);
    const auto obs = testutil::random_observations(5, 8, rng);
    const double direct = zharec::evaluate_direct(m, obs);
    const double via_forward = std::exp(zharec::forward(m, obs).log_likelihood);
    ASSERT_NEAR(via_forward, direct, 1e-10 * direct) << "trial=" << trial;
  }
}

TEST(Forward, MatchesBruteForceAcrossAllSmallSizes) {
  zharec::Rng rng(420);
  for (int n = 1; n <= 3; ++n) {
    for (int t = 1; t <= 6; ++t) {
      for (int trial = 0; trial < 5; ++trial) {
        const HmmModel m = testutil::random_model(n, 4, rng);
        const auto obs = testutil::random_observations(t, 4, rng);
        const double direct = zharec::evaluate_direct(m, obs);
        const double via_forward = std::exp(zharec::forward(m, obs).log_likelihood);
        ASSERT_NEAR(via_forward, direct, 1e-10 * direct) << "N=" << n << " T=" << t;
      }
    }
  }
}

TEST(Forward, TotalProbabilityOverAllSequencesIsOne) {
  zharec::Rng rng(404);
  const HmmModel m = testutil::random_model(2, 3, rng);
  const int t_len = 4;

  double total = 0.0;
  ObservationSequence obs(t_len, 0);
  while (true) {
    total += std::exp(zharec::forward(m, obs).log_likelihood);
    std::size_t d = 0;
    while (d < obs.size() && ++obs[d] == 3) obs[d++] = 0;
    if (d == obs.size()) break;
  }
  EXPECT_NEAR(total, 1.0, 1e-9);
}

TEST(Forward, RejectsBadSymbols) {
  const HmmModel m = two_state_model();
  EXPECT_THROW(zharec::forward(m, {0, 2}), zharec::SymbolOutOfRange);
  EXPECT_THROW(zharec::forward(m, {}), zharec::EmptySequence);
}

TEST(Forward, EmissionPermutationEquivariance) {
  zharec::Rng rng(405);
  const HmmModel m = testutil::random_model(3, 4, rng);
  const auto obs = testutil::random_observations(10, 4, rng);

  const std::vector<int> perm = {2, 0, 3, 1};  // symbol k -> perm[k]
  HmmModel permuted = m;
  for (int i = 0; i < 3; ++i) {
    for (int k = 0; k < 4; ++k) {
      permuted.emit[static_cast<std::size_t>(i)][static_cast<std::size_t>(perm[static_cast<std::size_t>(k)])] =
          m.emit[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
    }
  }
  ObservationSequence relabeled;
  for (int o : obs) relabeled.push_back(perm[static_cast<std::size_t>(o)]);

  EXPECT_EQ(zharec::forward(m, obs).log_likelihood,
            zharec::forward(permuted, relabeled).log_likelihood);
}

TEST(Backward, LastRowIsZeros) {
  const HmmModel m = two_state_model();
  const auto log_beta = zharec::backward(m, {0, 1, 0});
  for (double v : log_beta.back()) EXPECT_EQ(v, 0.0);
}

TEST(Backward, SingleStateSuffixProduct) {
  const HmmModel m = single_state_model({0.3, 0.7});
  const ObservationSequence obs = {0, 1, 1};
  const auto log_beta = zharec::backward(m, obs);
  // beta_t = prod_{s > t} b(o_s)
  EXPECT_NEAR(log_beta[0][0], std::log(0.3) + 2.0 * std::log(0.7), 1e-12);
  EXPECT_NEAR(log_beta[1][0], 2.0 * std::log(0.7), 1e-12);
  EXPECT_NEAR(log_beta[2][0], std::log(0.7), 1e-12);
  EXPECT_EQ(log_beta[3][0], 0.0);
}

TEST(Backward, ForwardBackwardConsistencyAtEveryStep) {
  zharec::Rng rng(406);
  for (int trial = 0; trial < 50; ++trial) {
    const HmmModel m = testutil::random_model(3, 6, rng);
    const auto obs = testutil::random_observations(15, 6, rng);
    const auto lattice = zharec::forward(m, obs);
    const auto log_beta = zharec::backward(m, obs);

    for (std::size_t t = 0; t <= obs.size(); ++t) {
      std::vector<double> terms;
      for (int i = 0; i < 3; ++i) {
        terms.push_back(lattice.log_alpha[t][static_cast<std::size_t>(i)] +
                        log_beta[t][static_cast<std::size_t>(i)]);
      }
      double hi = *std::max_element(terms.begin(), terms.end());
      double acc = 0.0;
      for (double v : terms) acc += std::exp(v - hi);
      ASSERT_NEAR(hi + std::log(acc), lattice.log_likelihood, 1e-9) << "t=" << t;
    }
  }
}

TEST(PosteriorDecode, SingleStateIsAllZero) {
  const HmmModel m = single_state_model({0.5, 0.5});
  const StateSequence q = zharec::posterior_decode(m, {0, 1, 0});
  EXPECT_EQ(q, (StateSequence{0, 0, 0, 0}));
}

TEST(PosteriorDecode, NearDeterministicEmissionsFollowObservations) {
  HmmModel m;
  m.pi = {0.5, 0.5};
  m.trans = {{0.5, 0.5}, {0.5, 0.5}};
  m.emit = {{0.98, 0.02}, {0.02, 0.98}};
  const StateSequence q = zharec::posterior_decode(m, {0, 1, 0});
  ASSERT_EQ(q.size(), 4u);
  EXPECT_EQ(q[1], 0);
  EXPECT_EQ(q[2], 1);
  EXPECT_EQ(q[3], 0);
}

TEST(PosteriorDecode, UnreachableStateNeverDecoded) {
  HmmModel m;
  m.pi = {1.0, 0.0};
  m.trans = {{1.0, 0.0}, {0.5, 0.5}};  // state 1 unreachable from start
  m.emit = {{0.5, 0.5}, {0.5, 0.5}};
  const ObservationSequence obs = {0, 1, 1, 0, 1};

  const auto lattice = zharec::forward(m, obs);
  const auto log_beta = zharec::backward(m, obs);
  for (std::size_t t = 0; t <= obs.size(); ++t) {
    // gamma of the unreachable state is exactly zero
    ASSERT_EQ(std::exp(lattice.log_alpha[t][1] + log_beta[t][1] - lattice.log_likelihood), 0.0);
  }
  const StateSequence q = zharec::posterior_decode(m, obs);
  for (int s : q) ASSERT_EQ(s, 0);
}

TEST(Viterbi, SingleStateTrivialPath) {
  const HmmModel m = single_state_model({0.4, 0.6});
  const ObservationSequence obs = {1, 0, 1};
  const auto path = zharec::viterbi(m, obs);
  EXPECT_EQ(path.states, (StateSequence{0, 0, 0, 0}));
  EXPECT_NEAR(path.log_probability, 2.0 * std::log(0.6) + std::log(0.4), 1e-12);
}

TEST(Viterbi, MatchesExhaustiveEnumeration) {
  zharec::Rng rng(407);
  for (int trial = 0; trial < 100; ++trial) {
    const HmmModel m = testutil::random_model(3, 4, rng);
    const auto obs = testutil::random_observations(5, 4, rng);

    const auto path = zharec::viterbi(m, obs);
    const auto [best_q, best_p] = exhaustive_best_path(m, obs);

    ASSERT_EQ(path.states, best_q) << "trial=" << trial;
    ASSERT_NEAR(std::exp(path.log_probability), best_p, 1e-12 * best_p) << "trial=" << trial;
    const double joint = zharec::joint_probability(m, path.states, obs);
    ASSERT_NEAR(joint, best_p, 1e-12 * best_p) << "trial=" << trial;
  }
}

TEST(Viterbi, LogProbabilityNeverExceedsForwardLikelihood) {
  zharec::Rng rng(408);
  for (int trial = 0; trial < 50; ++trial) {
    const HmmModel m = testutil::random_model(4, 5, rng);
    const auto obs = testutil::random_observations(20, 5, rng);
    ASSERT_LE(zharec::viterbi(m, obs).log_probability,
              zharec::forward(m, obs).log_likelihood + 1e-12);
  }
}

TEST(Viterbi, BeatsPosteriorDecodeOnJointProbability) {
  // Scan seeds for models where the two decoders disagree; on each, the
  // Viterbi path must carry at least as much joint probability.
  zharec::Rng rng(409);
  int disagreements = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const HmmModel m = testutil::random_model(3, 3, rng);
    const auto obs = testutil::random_observations(8, 3, rng);
    const auto vit = zharec::viterbi(m, obs);
    const StateSequence map_path = zharec::posterior_decode(m, obs);
    if (map_path != vit.states) {
      ++disagreements;
      ASSERT_GE(zharec::joint_probability(m, vit.states, obs),
                zharec::joint_probability(m, map_path, obs));
    }
  }
  EXPECT_GT(disagreements, 0);  // the two criteria genuinely differ somewhere
}

TEST(Sample, DeterministicModelHasUniqueOutput) {
  HmmModel m;
  m.pi = {0.0, 1.0};
  m.trans = {{0.0, 1.0}, {1.0, 0.0}};  // strict alternation
  m.emit = {{1.0, 0.0}, {0.0, 1.0}};
  for (std::uint64_t seed : {1ULL, 7ULL, 99ULL}) {
    const auto s = zharec::sample(m, 4, seed);
    EXPECT_EQ(s.states, (StateSequence{1, 0, 1, 0, 1}));
    EXPECT_EQ(s.symbols, (ObservationSequence{0, 1, 0, 1}));
  }
}

TEST(Sample, EmpiricalSymbolFrequenciesMatchEmissions) {
  const HmmModel m = single_state_model({0.15, 0.25, 0.6});
  const auto s = zharec::sample(m, 100000, 410);
  std::vector<double> freq(3, 0.0);
  for (int o : s.symbols) freq[static_cast<std::size_t>(o)] += 1.0;
  for (double& f : freq) f /= 100000.0;
  EXPECT_NEAR(freq[0], 0.15, 0.01);
  EXPECT_NEAR(freq[1], 0.25, 0.01);
  EXPECT_NEAR(freq[2], 0.6, 0.01);
}

TEST(Sample, EmpiricalTransitionCountsMatchMatrix) {
  HmmModel m;
  m.pi = {0.5, 0.5};
  m.trans = {{0.8, 0.2}, {0.35, 0.65}};
  m.emit = {{1.0}, {1.0}};
  const auto s = zharec::sample(m, 200000, 411);

  std::vector<std::vector<double>> counts(2, std::vector<double>(2, 0.0));
  std::vector<double> row_totals(2, 0.0);
  for (std::size_t t = 1; t < s.states.size(); ++t) {
    counts[static_cast<std::size_t>(s.states[t - 1])][static_cast<std::size_t>(s.states[t])] += 1.0;
    row_totals[static_cast<std::size_t>(s.states[t - 1])] += 1.0;
  }
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      EXPECT_NEAR(counts[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] / row_totals[static_cast<std::size_t>(i)],
                  m.trans[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], 0.02);
    }
  }
}

TEST(BaumWelch, OneStepOnSelfGeneratedDataDoesNotDecreaseLikelihood) {
  zharec::Rng rng(412);
  const HmmModel truth = testutil::random_model(2, 4, rng);
  std::vector<ObservationSequence> training;
  for (int s = 0; s < 5; ++s) training.push_back(zharec::sample(truth, 40, 500 + static_cast<std::uint64_t>(s)).symbols);

  const auto result = zharec::baum_welch(truth, training, 2, 1e-12);
  ASSERT_GE(result.log_likelihood_trace.size(), 2u);
  EXPECT_GE(result.log_likelihood_trace[1], result.log_likelihood_trace[0] - 1e-9);
}

TEST(BaumWelch, SingleStateConvergesToEmpiricalFrequencies) {
  const HmmModel init = single_state_model({0.4, 0.3, 0.3});
  const std::vector<ObservationSequence> training = {{0, 0, 1, 2, 0, 1, 0, 0, 2, 0}};
  const auto result = zharec::baum_welch(init, training, 1, 1e-12);

  // Empirical: 6/10, 2/10, 2/10. All symbols seen, so the 1e-6 floor never
  // binds and one step lands exactly on the ML estimate.
  EXPECT_NEAR(result.model.emit[0][0], 0.6, 1e-9);
  EXPECT_NEAR(result.model.emit[0][1], 0.2, 1e-9);
  EXPECT_NEAR(result.model.emit[0][2], 0.2, 1e-9);
}

TEST(BaumWelch, TraceMonotoneAndModelsStochasticEveryIteration) {
  zharec::Rng rng(413);
  const HmmModel truth = testutil::random_model(3, 5, rng);
  std::vector<ObservationSequence> training;
  for (int s = 0; s < 4; ++s) training.push_back(zharec::sample(truth, 30, 600 + static_cast<std::uint64_t>(s)).symbols);

  const HmmModel init = zharec::make_initial_model(3, 5, zharec::TransitionMask::ergodic(3), 414);
  int observed_iterations = 0;
  const auto result = zharec::baum_welch(
      init, training, 20, 1e-12, [&](int iter, const HmmModel& model, double ll) {
        EXPECT_TRUE(zharec::is_stochastic(model)) << "iter=" << iter;
        EXPECT_TRUE(std::isfinite(ll));
        ++observed_iterations;
      });
  EXPECT_EQ(observed_iterations, static_cast<int>(result.log_likelihood_trace.size()));
  for (std::size_t k = 1; k < result.log_likelihood_trace.size(); ++k) {
    ASSERT_GE(result.log_likelihood_trace[k], result.log_likelihood_trace[k - 1] - 1e-9);
  }
  EXPECT_TRUE(zharec::is_stochastic(result.model));
}

TEST(BaumWelch, RecoversHeldOutLikelihoodOfGeneratingModel) {
  // Well-separated two-state generator, perturbed start, 10 x T=50 training
  // sequences; the trained model must score held-out data within 0.05 nats
  // per observation of the generator. (The unnormalized per-sequence gap has
  // expectation d/(2 n_seq) ~ 0.35 nats for any correct ML fit at this data
  // size, so the criterion is on the length-normalized likelihood.)
  HmmModel truth;
  truth.pi = {0.8, 0.2};
  truth.trans = {{0.85, 0.15}, {0.1, 0.9}};
  truth.emit = {{0.8, 0.15, 0.05}, {0.05, 0.15, 0.8}};

  std::vector<ObservationSequence> training;
  for (int s = 0; s < 10; ++s) training.push_back(zharec::sample(truth, 50, 700 + static_cast<std::uint64_t>(s)).symbols);
  std::vector<ObservationSequence> held_out;
  for (int s = 0; s < 10; ++s) held_out.push_back(zharec::sample(truth, 50, 800 + static_cast<std::uint64_t>(s)).symbols);

  HmmModel start = truth;
  zharec::Rng rng(415);
  for (auto& row : start.trans) {
    for (double& v : row) v = std::max(0.02, v + rng.range(-0.05, 0.05));
    double sum = 0.0;
    for (double v : row) sum += v;
    for (double& v : row) v /= sum;
  }
  for (auto& row : start.emit) {
    for (double& v : row) v = std::max(0.02, v + rng.range(-0.05, 0.05));
    double sum = 0.0;
    for (double v : row) sum += v;
    for (double& v : row) v /= sum;
  }

  const auto result = zharec::baum_welch(start, training, 200, 1e-9);

  auto mean_ll_rate = [&held_out](const HmmModel& m) {
    double acc = 0.0;
    for (const auto& obs : held_out) {
      acc += zharec::forward(m, obs).log_likelihood / static_cast<double>(obs.size());
    }
    return acc / static_cast<double>(held_out.size());
  };
  EXPECT_NEAR(mean_ll_rate(result.model), mean_ll_rate(truth), 0.05);
}

TEST(BaumWelch, LeftToRightMaskSurvivesTraining) {
  zharec::Rng rng(416);
  const zharec::TransitionMask mask = zharec::TransitionMask::left_to_right(3);
  const HmmModel init = zharec::make_initial_model(3, 4, mask, 417);
  std::vector<ObservationSequence> training;
  for (int s = 0; s < 4; ++s) training.push_back(testutil::random_observations(25, 4, rng));

  const auto result = zharec::baum_welch(init, training, 15, 1e-12);
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < i; ++j) {
      ASSERT_EQ(result.model.trans[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], 0.0)
          << i << "->" << j;
    }
  }
  EXPECT_TRUE(zharec::is_stochastic(result.model));
}

TEST(BaumWelch, Errors) {
  const HmmModel m = two_state_model();
  EXPECT_THROW(zharec::baum_welch(m, {}, 5, 1e-6), zharec::EmptyTrainingSet);
  EXPECT_THROW(zharec::baum_welch(m, {{0, 5}}, 5, 1e-6), zharec::SymbolOutOfRange);
  EXPECT_THROW(zharec::baum_welch(m, {{0, 1}}, 0, 1e-6), zharec::InvalidConfig);
}

TEST(MakeInitialModel, UniformWithSeededEmissionNoise) {
  const auto mask = zharec::TransitionMask::ergodic(3);
  const HmmModel a = zharec::make_initial_model(3, 8, mask, 99);
  const HmmModel b = zharec::make_initial_model(3, 8, mask, 99);
  const HmmModel c = zharec::make_initial_model(3, 8, mask, 100);

  EXPECT_TRUE(zharec::is_stochastic(a));
  for (int i = 0; i < 3; ++i) {
    EXPECT_EQ(a.pi[static_cast<std::size_t>(i)], 1.0 / 3.0);
    for (int j = 0; j < 3; ++j) EXPECT_EQ(a.trans[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], 1.0 / 3.0);
    for (int k = 0; k < 8; ++k) {
      ASSERT_EQ(a.emit[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                b.emit[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)]);
      ASSERT_NEAR(a.emit[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], 1.0 / 8.0, 0.01);
    }
  }
  EXPECT_NE(a.emit, c.emit);  // different seed, different symmetry-breaking
}

TEST(ModelValidation, DetectsBrokenRows) {
  HmmModel m = two_state_model();
  EXPECT_NO_THROW(zharec::validate(m));
  m.trans[0][0] = 0.8;  // row sums to 1.1
  EXPECT_THROW(zharec::validate(m), zharec::InvalidConfig);
  m = two_state_model();
  m.emit[1][0] = -0.2;
  EXPECT_THROW(zharec::validate(m), zharec::InvalidConfig);
}

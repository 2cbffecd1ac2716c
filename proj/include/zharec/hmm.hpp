// Copyright 2026 The zharec Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Discrete hidden Markov model with a non-emitting initial state: a state
// sequence q_0..q_T carries T observations, q_0 is drawn from pi and emits
// nothing, and each q_t (t >= 1) emits o_t. Under this convention
//
//   P(q)       = pi[q_0] * prod_{t=1..T} a[q_{t-1}][q_t]
//   P(O, q)    = P(q)    * prod_{t=1..T} b[q_t][o_t]
//   P(O)       = sum over all N^{T+1} state sequences of P(O, q)
//
// The common pi'_j = sum_i pi_i a_ij mapping recovers the textbook
// convention where the first state already emits.
//
// Forward/backward/Viterbi run in the log domain; evaluate_direct keeps the
// linear-domain sum so it can serve as a convention-faithful oracle on
// short sequences.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "zharec/errors.hpp"
#include "zharec/rng.hpp"

namespace zharec {

using ObservationSequence = std::vector<int>;  // o_1..o_T, symbols in [0, M)
using StateSequence = std::vector<int>;        // q_0..q_T, length T+1

struct HmmModel {
  std::vector<double> pi;                  // N
  std::vector<std::vector<double>> trans;  // N x N, rows sum to 1
  std::vector<std::vector<double>> emit;   // N x M, rows sum to 1

  int n_states() const { return static_cast<int>(pi.size()); }
  int n_symbols() const { return trans.empty() || emit.empty() ? 0 : static_cast<int>(emit.front().size()); }
};

// Transition structure for initialization: mask[i][j] == true means the arc
// i -> j is allowed. Masked-out arcs start at probability 0 and stay there
// through re-estimation.
struct TransitionMask {
  std::vector<std::vector<bool>> allowed;

  static TransitionMask ergodic(int n_states) {
    TransitionMask m;
    m.allowed.assign(static_cast<std::size_t>(n_states),
                     std::vector<bool>(static_cast<std::size_t>(n_states), true));
    return m;
  }

  // Bakis form: self-loops and any forward arc (skips included).
  static TransitionMask left_to_right(int n_states) {
    TransitionMask m;
    m.allowed.assign(static_cast<std::size_t>(n_states),
                     std::vector<bool>(static_cast<std::size_t>(n_states), false));
    for (int i = 0; i < n_states; ++i) {
      for (int j = i; j < n_states; ++j) m.allowed[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = true;
    }
    return m;
  }
};

constexpr double kStochasticTol = 1e-9;

inline bool is_stochastic(const HmmModel& model, double tol = kStochasticTol) {
  const int n = model.n_states();
  const int m = model.n_symbols();
  if (n < 1 || m < 1) return false;
  if (static_cast<int>(model.trans.size()) != n || static_cast<int>(model.emit.size()) != n) return false;

  auto row_ok = [tol](const std::vector<double>& row) {
    double sum = 0.0;
    for (double v : row) {
      if (!(v >= 0.0) || !std::isfinite(v)) return false;
      sum += v;
    }
    return std::abs(sum - 1.0) <= tol;
  };
  if (!row_ok(model.pi)) return false;
  for (const auto& row : model.trans) {
    if (static_cast<int>(row.size()) != n || !row_ok(row)) return false;
  }
  for (const auto& row : model.emit) {
    if (static_cast<int>(row.size()) != m || !row_ok(row)) return false;
  }
  return true;
}

inline void validate(const HmmModel& model) {
  if (!is_stochastic(model)) {
    throw InvalidConfig("hmm: model violates stochasticity invariants");
  }
}

namespace detail {

inline double logsumexp(std::span<const double> xs) {
  double hi = -std::numeric_limits<double>::infinity();
  for (double x : xs) hi = std::max(hi, x);
  if (!std::isfinite(hi)) return hi;  // all -inf (or a stray +inf)
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

inline void check_symbols(const HmmModel& model, const ObservationSequence& obs) {
  if (obs.empty()) throw EmptySequence("hmm: observation sequence is empty");
  for (int o : obs) {
    if (o < 0 || o >= model.n_symbols()) {
      throw SymbolOutOfRange("hmm: symbol " + std::to_string(o) + " outside [0, " +
                             std::to_string(model.n_symbols()) + ")");
    }
  }
}

inline void check_states(const HmmModel& model, const StateSequence& q) {
  for (int s : q) {
    if (s < 0 || s >= model.n_states()) {
      throw IndexOutOfRange("hmm: state " + std::to_string(s) + " outside [0, " +
                            std::to_string(model.n_states()) + ")");
    }
  }
}

inline std::vector<std::vector<double>> log_of(const std::vector<std::vector<double>>& m) {
  std::vector<std::vector<double>> out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    out[i].resize(m[i].size());
    for (std::size_t j = 0; j < m[i].size(); ++j) out[i][j] = std::log(m[i][j]);
  }
  return out;
}

}  // namespace detail

// P(q) = pi[q_0] * prod a[q_{t-1}][q_t].
inline double state_sequence_probability(const HmmModel& model, const StateSequence& q) {
  if (q.empty()) throw EmptySequence("state_sequence_probability: empty state sequence");
  detail::check_states(model, q);
  double p = model.pi[static_cast<std::size_t>(q[0])];
  for (std::size_t t = 1; t < q.size(); ++t) {
    p *= model.trans[static_cast<std::size_t>(q[t - 1])][static_cast<std::size_t>(q[t])];
  }
  return p;
}

// P(O, q) = P(q) * prod b[q_t][o_t]; requires |q| == |obs| + 1.
inline double joint_probability(const HmmModel& model, const StateSequence& q,
                                const ObservationSequence& obs) {
  if (q.size() != obs.size() + 1) {
    throw LengthMismatch("joint_probability: |q| = " + std::to_string(q.size()) +
                         " but |obs| + 1 = " + std::to_string(obs.size() + 1));
  }
  detail::check_symbols(model, obs);
  double p = state_sequence_probability(model, q);
  for (std::size_t t = 0; t < obs.size(); ++t) {
    p *= model.emit[static_cast<std::size_t>(q[t + 1])][static_cast<std::size_t>(obs[t])];
  }
  return p;
}

// P(O) by brute-force summation over all N^{T+1} state sequences, in the
// linear domain. Guarded to N^{T+1} <= 10^7: this is a test oracle, not a
// production path.
inline double evaluate_direct(const HmmModel& model, const ObservationSequence& obs) {
  detail::check_symbols(model, obs);
  const int n = model.n_states();
  const std::size_t len = obs.size() + 1;

  double count = 1.0;
  for (std::size_t i = 0; i < len; ++i) {
    count *= n;
    if (count > 1e7) {
      throw SequenceTooLong("evaluate_direct: N^(T+1) exceeds 1e7; use forward() instead");
    }
  }

  StateSequence q(len, 0);
  double total = 0.0;
  while (true) {
    double p = model.pi[static_cast<std::size_t>(q[0])];
    for (std::size_t t = 1; t < len; ++t) {
      p *= model.trans[static_cast<std::size_t>(q[t - 1])][static_cast<std::size_t>(q[t])] *
           model.emit[static_cast<std::size_t>(q[t])][static_cast<std::size_t>(obs[t - 1])];
    }
    total += p;

    std::size_t d = 0;
    while (d < len && ++q[d] == n) q[d++] = 0;
    if (d == len) break;
  }
  return total;
}

// Log-domain forward trellis. Row 0 holds log pi; row t holds log alpha_t.
struct ForwardLattice {
  std::vector<std::vector<double>> log_alpha;  // (T+1) x N
  double log_likelihood = 0.0;                 // logsumexp of the last row
};

// alpha_0(i) = pi_i; alpha_t(j) = [sum_i alpha_{t-1}(i) a_ij] b_j(o_t).
// O(T N^2), stable for arbitrary T via logsumexp.
inline ForwardLattice forward(const HmmModel& model, const ObservationSequence& obs) {
  detail::check_symbols(model, obs);
  const int n = model.n_states();
  const std::size_t t_len = obs.size();

  ForwardLattice lattice;
  lattice.log_alpha.assign(t_len + 1, std::vector<double>(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i) {
    lattice.log_alpha[0][static_cast<std::size_t>(i)] = std::log(model.pi[static_cast<std::size_t>(i)]);
  }

  const auto log_a = detail::log_of(model.trans);
  const auto log_b = detail::log_of(model.emit);

  std::vector<double> terms(static_cast<std::size_t>(n));
  for (std::size_t t = 1; t <= t_len; ++t) {
    const int o = obs[t - 1];
    for (int j = 0; j < n; ++j) {
      for (int i = 0; i < n; ++i) {
        terms[static_cast<std::size_t>(i)] =
            lattice.log_alpha[t - 1][static_cast<std::size_t>(i)] + log_a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      }
      lattice.log_alpha[t][static_cast<std::size_t>(j)] =
          detail::logsumexp(terms) + log_b[static_cast<std::size_t>(j)][static_cast<std::size_t>(o)];
    }
  }
  lattice.log_likelihood = detail::logsumexp(lattice.log_alpha[t_len]);
  return lattice;
}

// Log-domain backward pass: beta_T(i) = 1 and
// beta_t(i) = sum_j a_ij b_j(o_{t+1}) beta_{t+1}(j).
// For every t, logsumexp_i(log alpha_t(i) + log beta_t(i)) equals the
// forward log-likelihood.
inline std::vector<std::vector<double>> backward(const HmmModel& model,
                                                 const ObservationSequence& obs) {
  detail::check_symbols(model, obs);
  const int n = model.n_states();
  const std::size_t t_len = obs.size();

  std::vector<std::vector<double>> log_beta(t_len + 1, std::vector<double>(static_cast<std::size_t>(n), 0.0));
  const auto log_a = detail::log_of(model.trans);
  const auto log_b = detail::log_of(model.emit);

  std::vector<double> terms(static_cast<std::size_t>(n));
  for (std::size_t t = t_len; t-- > 0;) {
    const int o = obs[t];  // o_{t+1} in 1-based observation indexing
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        terms[static_cast<std::size_t>(j)] = log_a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +
                                             log_b[static_cast<std::size_t>(j)][static_cast<std::size_t>(o)] +
                                             log_beta[t + 1][static_cast<std::size_t>(j)];
      }
      log_beta[t][static_cast<std::size_t>(i)] = detail::logsumexp(terms);
    }
  }
  return log_beta;
}

// Instantaneous MAP decoding: q_t = argmax_i alpha_t(i) beta_t(i) at every
// t = 0..T independently; ties break toward the lowest state index.
inline StateSequence posterior_decode(const HmmModel& model, const ObservationSequence& obs) {
  const ForwardLattice lattice = forward(model, obs);
  const auto log_beta = backward(model, obs);
  const int n = model.n_states();

  StateSequence q(obs.size() + 1, 0);
  for (std::size_t t = 0; t < q.size(); ++t) {
    int best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < n; ++i) {
      const double score = lattice.log_alpha[t][static_cast<std::size_t>(i)] + log_beta[t][static_cast<std::size_t>(i)];
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    q[t] = best;
  }
  return q;
}

struct ViterbiPath {
  StateSequence states;          // q_0..q_T
  double log_probability = 0.0;  // log P(O, q*)
};

// Max-product dynamic program over state sequences q_0..q_T. Ties break
// toward the lowest state index at every step.
inline ViterbiPath viterbi(const HmmModel& model, const ObservationSequence& obs) {
  detail::check_symbols(model, obs);
  const int n = model.n_states();
  const std::size_t t_len = obs.size();

  const auto log_a = detail::log_of(model.trans);
  const auto log_b = detail::log_of(model.emit);

  std::vector<std::vector<double>> delta(t_len + 1, std::vector<double>(static_cast<std::size_t>(n)));
  std::vector<std::vector<int>> back(t_len + 1, std::vector<int>(static_cast<std::size_t>(n), 0));
  for (int i = 0; i < n; ++i) delta[0][static_cast<std::size_t>(i)] = std::log(model.pi[static_cast<std::size_t>(i)]);

  for (std::size_t t = 1; t <= t_len; ++t) {
    const int o = obs[t - 1];
    for (int j = 0; j < n; ++j) {
      int arg = 0;
      double best = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        const double cand = delta[t - 1][static_cast<std::size_t>(i)] + log_a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        if (cand > best) {
          best = cand;
          arg = i;
        }
      }
      delta[t][static_cast<std::size_t>(j)] = best + log_b[static_cast<std::size_t>(j)][static_cast<std::size_t>(o)];
      back[t][static_cast<std::size_t>(j)] = arg;
    }
  }

  ViterbiPath path;
  path.states.assign(t_len + 1, 0);
  int best = 0;
  double best_score = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i) {
    if (delta[t_len][static_cast<std::size_t>(i)] > best_score) {
      best_score = delta[t_len][static_cast<std::size_t>(i)];
      best = i;
    }
  }
  path.log_probability = best_score;
  path.states[t_len] = best;
  for (std::size_t t = t_len; t-- > 0;) {
    path.states[t] = back[t + 1][static_cast<std::size_t>(path.states[t + 1])];
  }
  return path;
}

struct BaumWelchResult {
  HmmModel model;
  // log_likelihood_trace[k] is the total training log-likelihood of the
  // model entering iteration k (so trace[0] belongs to the initial model).
  std::vector<double> log_likelihood_trace;
};

// Called after every M-step with the iteration index (0-based), the
// re-estimated model, and the training log-likelihood of the model that
// produced it.
using BaumWelchObserver = std::function<void(int, const HmmModel&, double)>;

// Multi-sequence Baum-Welch maximum-likelihood re-estimation under the
// non-emitting-q_0 convention: pi from gamma_0, transitions from xi over
// t = 1..T, emissions from gamma over t = 1..T only. Emission rows are
// floored at 1e-6 and renormalized after every M-step so unseen symbols
// cannot lock a class out. Stops after max_iters or when the total
// log-likelihood improves by less than tol.
inline BaumWelchResult baum_welch(const HmmModel& init,
                                  const std::vector<ObservationSequence>& training, int max_iters,
                                  double tol, const BaumWelchObserver& observer = {}) {
  if (training.empty()) throw EmptyTrainingSet("baum_welch: no training sequences");
  if (max_iters < 1) throw InvalidConfig("baum_welch: max_iters must be >= 1");
  if (!(tol > 0.0)) throw InvalidConfig("baum_welch: tol must be positive");
  validate(init);
  for (const ObservationSequence& obs : training) detail::check_symbols(init, obs);

  constexpr double kEmissionFloor = 1e-6;
  const int n = init.n_states();
  const int m = init.n_symbols();

  BaumWelchResult result;
  result.model = init;

  for (int iter = 0; iter < max_iters; ++iter) {
    const HmmModel& model = result.model;

    std::vector<double> pi_acc(static_cast<std::size_t>(n), 0.0);
    std::vector<std::vector<double>> trans_num(static_cast<std::size_t>(n),
                                               std::vector<double>(static_cast<std::size_t>(n), 0.0));
    std::vector<double> trans_den(static_cast<std::size_t>(n), 0.0);
    std::vector<std::vector<double>> emit_num(static_cast<std::size_t>(n),
                                              std::vector<double>(static_cast<std::size_t>(m), 0.0));
    std::vector<double> emit_den(static_cast<std::size_t>(n), 0.0);
    double total_ll = 0.0;

    const auto log_a = detail::log_of(model.trans);
    const auto log_b = detail::log_of(model.emit);

    for (const ObservationSequence& obs : training) {
      const ForwardLattice lattice = forward(model, obs);
      const auto log_beta = backward(model, obs);
      const double ll = lattice.log_likelihood;
      if (!std::isfinite(ll)) {
        throw NumericalBreakdown("baum_welch: a training sequence has zero probability under the current model");
      }
      total_ll += ll;

      const std::size_t t_len = obs.size();
      std::vector<double> gamma_prev(static_cast<std::size_t>(n));
      for (int i = 0; i < n; ++i) {
        gamma_prev[static_cast<std::size_t>(i)] =
            std::exp(lattice.log_alpha[0][static_cast<std::size_t>(i)] + log_beta[0][static_cast<std::size_t>(i)] - ll);
        pi_acc[static_cast<std::size_t>(i)] += gamma_prev[static_cast<std::size_t>(i)];
      }

      for (std::size_t t = 1; t <= t_len; ++t) {
        const int o = obs[t - 1];
        for (int i = 0; i < n; ++i) {
          trans_den[static_cast<std::size_t>(i)] += gamma_prev[static_cast<std::size_t>(i)];
          const double la = lattice.log_alpha[t - 1][static_cast<std::size_t>(i)];
          if (!std::isfinite(la)) continue;
          for (int j = 0; j < n; ++j) {
            const double laij = log_a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            if (!std::isfinite(laij)) continue;  // masked arc
            trans_num[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                std::exp(la + laij + log_b[static_cast<std::size_t>(j)][static_cast<std::size_t>(o)] +
                         log_beta[t][static_cast<std::size_t>(j)] - ll);
          }
        }
        for (int j = 0; j < n; ++j) {
          const double g =
              std::exp(lattice.log_alpha[t][static_cast<std::size_t>(j)] + log_beta[t][static_cast<std::size_t>(j)] - ll);
          emit_num[static_cast<std::size_t>(j)][static_cast<std::size_t>(o)] += g;
          emit_den[static_cast<std::size_t>(j)] += g;
          gamma_prev[static_cast<std::size_t>(j)] = g;
        }
      }
    }

    result.log_likelihood_trace.push_back(total_ll);

    // M-step.
    HmmModel next = model;
    const double seq_count = static_cast<double>(training.size());
    for (int i = 0; i < n; ++i) next.pi[static_cast<std::size_t>(i)] = pi_acc[static_cast<std::size_t>(i)] / seq_count;
    for (int i = 0; i < n; ++i) {
      if (trans_den[static_cast<std::size_t>(i)] > 0.0) {
        for (int j = 0; j < n; ++j) {
          next.trans[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              trans_num[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] / trans_den[static_cast<std::size_t>(i)];
        }
      }  // zero occupancy: keep the previous row
      if (emit_den[static_cast<std::size_t>(i)] > 0.0) {
        for (int k = 0; k < m; ++k) {
          next.emit[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
              emit_num[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] / emit_den[static_cast<std::size_t>(i)];
        }
      }
    }

    // Floor emissions, then renormalize all rows.
    auto renormalize = [](std::vector<double>& row) {
      double sum = 0.0;
      for (double v : row) sum += v;
      if (sum > 0.0) {
        for (double& v : row) v /= sum;
      }
    };
    for (int i = 0; i < n; ++i) {
      for (double& v : next.emit[static_cast<std::size_t>(i)]) v = std::max(v, kEmissionFloor);
      renormalize(next.emit[static_cast<std::size_t>(i)]);
      renormalize(next.trans[static_cast<std::size_t>(i)]);
    }
    renormalize(next.pi);

    result.model = std::move(next);
    if (observer) observer(iter, result.model, total_ll);

    const std::size_t k = result.log_likelihood_trace.size();
    if (k >= 2 && result.log_likelihood_trace[k - 1] - result.log_likelihood_trace[k - 2] < tol) break;
  }
  return result;
}

// Uniform starting model for training: pi and the mask-allowed transitions
// uniform, emissions uniform with +/-1% seeded noise to break symmetry.
inline HmmModel make_initial_model(int n_states, int n_symbols, const TransitionMask& mask,
                                   std::uint64_t seed) {
  if (n_states < 1 || n_symbols < 1) {
    throw InvalidConfig("make_initial_model: need at least one state and one symbol");
  }
  if (static_cast<int>(mask.allowed.size()) != n_states) {
    throw InvalidConfig("make_initial_model: mask size does not match n_states");
  }

  Rng rng(seed);
  HmmModel model;
  model.pi.assign(static_cast<std::size_t>(n_states), 1.0 / n_states);
  model.trans.assign(static_cast<std::size_t>(n_states),
                     std::vector<double>(static_cast<std::size_t>(n_states), 0.0));
  for (int i = 0; i < n_states; ++i) {
    int allowed = 0;
    for (int j = 0; j < n_states; ++j) allowed += mask.allowed[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ? 1 : 0;
    if (allowed == 0) throw InvalidConfig("make_initial_model: state " + std::to_string(i) + " has no outgoing arcs");
    for (int j = 0; j < n_states; ++j) {
      if (mask.allowed[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) {
        model.trans[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = 1.0 / allowed;
      }
    }
  }
  model.emit.assign(static_cast<std::size_t>(n_states),
                    std::vector<double>(static_cast<std::size_t>(n_symbols), 0.0));
  for (int i = 0; i < n_states; ++i) {
    double sum = 0.0;
    for (int k = 0; k < n_symbols; ++k) {
      const double v = 1.0 + 0.01 * rng.range(-1.0, 1.0);
      model.emit[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = v;
      sum += v;
    }
    for (double& v : model.emit[static_cast<std::size_t>(i)]) v /= sum;
  }
  return model;
}

struct SampledSequence {
  StateSequence states;        // q_0..q_T
  ObservationSequence symbols; // o_1..o_T
};

// Draws q_0 ~ pi, q_t ~ trans[q_{t-1}], o_t ~ emit[q_t]; bit-reproducible
// for a given seed.
inline SampledSequence sample(const HmmModel& model, int length, std::uint64_t seed) {
  if (length < 1) throw InvalidConfig("sample: length must be >= 1");
  Rng rng(seed);
  SampledSequence out;
  out.states.reserve(static_cast<std::size_t>(length) + 1);
  out.symbols.reserve(static_cast<std::size_t>(length));

  int state = rng.categorical(model.pi);
  out.states.push_back(state);
  for (int t = 0; t < length; ++t) {
    state = rng.categorical(model.trans[static_cast<std::size_t>(state)]);
    out.states.push_back(state);
    out.symbols.push_back(rng.categorical(model.emit[static_cast<std::size_t>(state)]));
  }
  return out;
}

}  // namespace zharec

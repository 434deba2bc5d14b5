/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qclass/stats.hpp"

#include <stdexcept>
#include <unordered_map>

namespace qclass {

namespace {

void require_valid_sequence(const MarkovProcess &p, const OutcomeSequence &seq,
                            bool complete) {
  if (auto err = sequence_error(p, seq, complete)) {
    throw std::invalid_argument(*err);
  }
}

}  // namespace

//=========================================================================
// JointDistribution
//=========================================================================

double JointDistribution::total() const {
  double sum = 0.0;
  for (const auto &[seq, prob] : table) sum += prob;
  return sum;
}

const double *JointDistribution::find(const OutcomeSequence &seq) const {
  for (const auto &[key, prob] : table) {
    if (key == seq) return &prob;
  }
  return nullptr;
}

//=========================================================================
// Multi-time statistics
//=========================================================================

double joint_prob(const MarkovProcess &p, const OutcomeSequence &seq) {
  require_valid_sequence(p, seq, true);
  cmatrix_t state = p.initial.mat;
  const int n = p.times();
  for (int i = 1; i <= n; ++i) {
    const cmatrix_t *kraus = p.instruments[i - 1].find(*seq.label_at(i));
    state = (*kraus) * state * kraus->adjoint();
    if (i < n) state = apply_map(p.dynamics[i - 1], state);
  }
  return std::real(state.trace());
}

namespace {

void enumerate_distribution(const MarkovProcess &p, const std::set<int> &measure_at,
                            int time, const cmatrix_t &state, OutcomeSequence &prefix,
                            JointDistribution &out) {
  const int n = p.times();
  if (time > n) {
    out.table.emplace_back(prefix, std::real(state.trace()));
    return;
  }
  if (measure_at.count(time)) {
    for (const auto &[label, kraus] : p.instruments[time - 1].elements) {
      cmatrix_t next = kraus * state * kraus.adjoint();
      if (time < n) next = apply_map(p.dynamics[time - 1], next);
      prefix.push_back(time, label);
      enumerate_distribution(p, measure_at, time + 1, next, prefix, out);
      prefix.outcomes.pop_back();
    }
  } else {
    cmatrix_t next = state;
    if (time < n) next = apply_map(p.dynamics[time - 1], next);
    enumerate_distribution(p, measure_at, time + 1, next, prefix, out);
  }
}

}  // namespace

JointDistribution full_distribution(const MarkovProcess &p, const std::set<int> &measure_at) {
  for (int t : measure_at) {
    if (t < 1 || t > p.times()) {
      throw std::invalid_argument("full_distribution: time t" + std::to_string(t) +
                                  " outside 1.." + std::to_string(p.times()));
    }
  }
  JointDistribution dist;
  dist.times.assign(measure_at.begin(), measure_at.end());
  OutcomeSequence prefix;
  enumerate_distribution(p, measure_at, 1, p.initial.mat, prefix, dist);
  return dist;
}

JointDistribution full_distribution(const MarkovProcess &p) {
  std::set<int> all;
  for (int t = 1; t <= p.times(); ++t) all.insert(t);
  return full_distribution(p, all);
}

ConditionedState pre_measurement_state(const MarkovProcess &p, int time,
                                       const OutcomeSequence &history) {
  if (time < 1 || time > p.times()) {
    throw std::invalid_argument("pre_measurement_state: time outside the process");
  }
  require_valid_sequence(p, history, false);
  if (static_cast<int>(history.size()) != time - 1) {
    throw std::invalid_argument("pre_measurement_state: history must cover times 1.." +
                                std::to_string(time - 1));
  }
  for (int t = 1; t < time; ++t) {
    if (!history.label_at(t)) {
      throw std::invalid_argument("pre_measurement_state: history is missing time t" +
                                  std::to_string(t));
    }
  }

  cmatrix_t state = p.initial.mat;
  for (int t = 1; t < time; ++t) {
    const cmatrix_t *kraus = p.instruments[t - 1].find(*history.label_at(t));
    state = (*kraus) * state * kraus->adjoint();
    state = apply_map(p.dynamics[t - 1], state);
  }
  return ConditionedState{time, history, DensityMatrix{state, time == 1 && p.initial.normalized}};
}

PostOperator post_measurement_operator(const MarkovProcess &p, int time,
                                       const OutcomeSequence &future) {
  const int n = p.times();
  if (time < 1 || time > n) {
    throw std::invalid_argument("post_measurement_operator: time outside the process");
  }
  require_valid_sequence(p, future, false);
  if (static_cast<int>(future.size()) != n - time) {
    throw std::invalid_argument("post_measurement_operator: future must cover times " +
                                std::to_string(time + 1) + ".." + std::to_string(n));
  }
  for (int t = time + 1; t <= n; ++t) {
    if (!future.label_at(t)) {
      throw std::invalid_argument("post_measurement_operator: future is missing time t" +
                                  std::to_string(t));
    }
  }

  // Backward recursion Q_i = Lambda^dagger_{i+1:i}[K^dagger Q_{i+1} K],
  // starting from Q_n = identity.
  cmatrix_t q = identity_matrix(p.dim);
  for (int t = n; t > time; --t) {
    const cmatrix_t *kraus = p.instruments[t - 1].find(*future.label_at(t));
    q = kraus->adjoint() * q * (*kraus);
    q = apply_adjoint_map(p.dynamics[t - 2], q);
  }
  return PostOperator{time, future, std::move(q)};
}

namespace {

void enumerate_sequences(const MarkovProcess &p, int first, int last, int time,
                         OutcomeSequence &prefix,
                         std::vector<OutcomeSequence> &out) {
  if (time > last) {
    out.push_back(prefix);
    return;
  }
  for (const auto &[label, kraus] : p.instruments[time - 1].elements) {
    prefix.push_back(time, label);
    enumerate_sequences(p, first, last, time + 1, prefix, out);
    prefix.outcomes.pop_back();
  }
}

std::vector<OutcomeSequence> sequences_over(const MarkovProcess &p, int first, int last) {
  std::vector<OutcomeSequence> out;
  OutcomeSequence prefix;
  enumerate_sequences(p, first, last, first, prefix, out);
  return out;
}

}  // namespace

std::vector<ConditionedState> all_pre_states(const MarkovProcess &p, int time) {
  std::vector<ConditionedState> out;
  for (const auto &history : sequences_over(p, 1, time - 1)) {
    out.push_back(pre_measurement_state(p, time, history));
  }
  return out;
}

std::vector<PostOperator> all_post_operators(const MarkovProcess &p, int time) {
  std::vector<PostOperator> out;
  for (const auto &future : sequences_over(p, time + 1, p.times())) {
    out.push_back(post_measurement_operator(p, time, future));
  }
  return out;
}

double split_prob(const MarkovProcess &p, int time, const OutcomeSequence &seq) {
  require_valid_sequence(p, seq, true);
  OutcomeSequence history, future;
  for (const auto &[t, label] : seq.outcomes) {
    if (t < time) history.push_back(t, label);
    if (t > time) future.push_back(t, label);
  }
  const ConditionedState pre = pre_measurement_state(p, time, history);
  const PostOperator post = post_measurement_operator(p, time, future);
  const cmatrix_t *kraus = p.instruments[time - 1].find(*seq.label_at(time));
  return std::real((pre.state.mat * kraus->adjoint() * post.op * (*kraus)).trace());
}

JointDistribution marginalize(const JointDistribution &dist, int time) {
  bool measured = false;
  for (int t : dist.times) measured |= (t == time);
  if (!measured) {
    throw std::invalid_argument("marginalize: time t" + std::to_string(time) +
                                " is not part of the distribution");
  }

  JointDistribution out;
  for (int t : dist.times) {
    if (t != time) out.times.push_back(t);
  }

  std::unordered_map<std::string, std::size_t> index;
  for (const auto &[seq, prob] : dist.table) {
    OutcomeSequence reduced;
    for (const auto &[t, label] : seq.outcomes) {
      if (t != time) reduced.push_back(t, label);
    }
    const std::string key = reduced.str();
    auto it = index.find(key);
    if (it == index.end()) {
      index.emplace(key, out.table.size());
      out.table.emplace_back(std::move(reduced), prob);
    } else {
      out.table[it->second].second += prob;
    }
  }
  return out;
}

}  // namespace qclass

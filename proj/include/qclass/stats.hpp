/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QCLASS_STATS_HPP
#define QCLASS_STATS_HPP

#include <set>
#include <vector>

#include "qclass/process.hpp"

namespace qclass {

//=========================================================================
// Domain types
//=========================================================================

// Joint outcome distribution over a subset of times. Entries are kept in
// lexicographic enumeration order (earliest time outermost, outcomes in
// declared instrument order), which makes reports deterministic.
struct JointDistribution {
  std::vector<int> times;
  std::vector<std::pair<OutcomeSequence, double>> table;

  double total() const;
  // nullptr when seq is not a key of the table.
  const double *find(const OutcomeSequence &seq) const;
};

// Subnormalised system state just before the measurement at `time`,
// conditioned on the outcome history; its trace is the history probability.
struct ConditionedState {
  int time = 1;
  OutcomeSequence history;  // outcomes at times 1..time-1
  DensityMatrix state;
};

// Effect operator collecting a fixed future outcome sequence, rolled back
// through the adjoint dynamics to `time`; satisfies 0 <= op <= 1.
struct PostOperator {
  int time = 1;
  OutcomeSequence future;  // outcomes at times time+1..n
  cmatrix_t op;
};

//=========================================================================
// Multi-time statistics
//=========================================================================

// Probability of observing the complete outcome sequence, evaluated by
// sequential density-matrix updates.
double joint_prob(const MarkovProcess &p, const OutcomeSequence &seq);

// Joint distribution over the measured times; times not in measure_at get
// no Kraus insertion while the intermediate dynamics still act.
JointDistribution full_distribution(const MarkovProcess &p, const std::set<int> &measure_at);
JointDistribution full_distribution(const MarkovProcess &p);

ConditionedState pre_measurement_state(const MarkovProcess &p, int time,
                                       const OutcomeSequence &history);
PostOperator post_measurement_operator(const MarkovProcess &p, int time,
                                       const OutcomeSequence &future);

// All conditioned states (over histories) and all post operators (over
// futures) at one time, in enumeration order.
std::vector<ConditionedState> all_pre_states(const MarkovProcess &p, int time);
std::vector<PostOperator> all_post_operators(const MarkovProcess &p, int time);

// tr(rho~_i K^dagger Q_i K) for the split at `time`; equals joint_prob for
// every split point, which the test suite uses as the engine's primary
// self-consistency check.
double split_prob(const MarkovProcess &p, int time, const OutcomeSequence &seq);

// Sum the table over the outcomes at `time`.
JointDistribution marginalize(const JointDistribution &dist, int time);

}  // namespace qclass

#endif

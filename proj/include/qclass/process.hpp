/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QCLASS_PROCESS_HPP
#define QCLASS_PROCESS_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qclass/opmat.hpp"

namespace qclass {

//=========================================================================
// Domain types
//=========================================================================

// A system state. Subnormalised states are first-class values: their trace
// carries the probability of the conditioning event, so they are never
// renormalised implicitly.
struct DensityMatrix {
  cmatrix_t mat;
  bool normalized = true;
};

// Kraus representation of a CPTP map, rho -> sum_l L_l rho L_l^dagger.
struct KrausSet {
  std::vector<cmatrix_t> ops;

  Eigen::Index dim() const { return ops.empty() ? 0 : ops.front().rows(); }
};

// A quantum instrument with exactly one Kraus operator per outcome.
// Outcome labels keep their declared order.
struct Instrument {
  std::vector<std::pair<std::string, cmatrix_t>> elements;

  Eigen::Index dim() const { return elements.empty() ? 0 : elements.front().second.rows(); }
  const cmatrix_t *find(const std::string &label) const;
  bool all_hermitian(double tol = default_tol) const;
};

// Outcomes observed at a subset of times; time indices are 1-based and
// strictly increasing.
struct OutcomeSequence {
  std::vector<std::pair<int, std::string>> outcomes;

  bool empty() const { return outcomes.empty(); }
  std::size_t size() const { return outcomes.size(); }
  void push_back(int time, std::string label) { outcomes.emplace_back(time, std::move(label)); }
  const std::string *label_at(int time) const;
  std::string str() const;

  bool operator==(const OutcomeSequence &other) const { return outcomes == other.outcomes; }
};

// A memoryless multi-time process on times t_1..t_n: an initial state, n-1
// intermediate CPTP maps and one instrument per time.
struct MarkovProcess {
  Eigen::Index dim = 0;
  DensityMatrix initial;
  std::vector<KrausSet> dynamics;      // dynamics[i-1] maps t_i -> t_{i+1}
  std::vector<Instrument> instruments; // instruments[i-1] probes t_i
  std::string name;

  int times() const { return static_cast<int>(instruments.size()); }
};

//=========================================================================
// Validation
//=========================================================================

struct ValidationReport {
  std::vector<std::string> violations;
  // One entry per instrument: true when every Kraus operator is Hermitian.
  std::vector<bool> instrument_hermitian;

  bool valid() const { return violations.empty(); }
  bool all_hermitian() const;
};

// Collects every violated invariant (bad state, non-CPTP dynamics,
// incomplete instrument, dimension mismatch) instead of failing fast.
ValidationReport validate_process(const MarkovProcess &p, double tol = default_tol);

// Empty result when the sequence is consistent with p, else a diagnostic.
// With require_complete set, the sequence must cover every time of p.
std::optional<std::string> sequence_error(const MarkovProcess &p,
                                          const OutcomeSequence &seq,
                                          bool require_complete);

//=========================================================================
// Map application
//=========================================================================

cmatrix_t apply_map(const KrausSet &map, const cmatrix_t &rho);
DensityMatrix apply_map(const KrausSet &map, const DensityMatrix &rho);

// Hilbert-Schmidt adjoint (Heisenberg picture), sum_l L_l^dagger q L_l.
cmatrix_t apply_adjoint_map(const KrausSet &map, const cmatrix_t &q);

// sum_m K_m^dagger q K_m over all instrument outcomes.
cmatrix_t instrument_total_adjoint(const Instrument &instrument, const cmatrix_t &q);

}  // namespace qclass

#endif

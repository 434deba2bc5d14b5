/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QCLASS_CLASSICALITY_HPP
#define QCLASS_CLASSICALITY_HPP

#include <optional>
#include <string>
#include <vector>

#include "qclass/stats.hpp"

namespace qclass {

//=========================================================================
// Results
//=========================================================================

// One evaluated context of a criterion. `outcome` is the probed outcome at
// `time` and stays empty for criteria that sum over it.
struct ContextRecord {
  int time = 1;
  OutcomeSequence history;
  std::string outcome;
  OutcomeSequence future;
  double residual = 0.0;
  // For the consistency check: the matching marginalise-vs-skip difference
  // of the observable distributions. Agrees with `residual` up to numerics.
  std::optional<double> operational_residual;
  std::vector<std::string> flags;
};

struct CheckResult {
  std::string criterion;
  std::vector<ContextRecord> contexts;
  double max_residual = 0.0;
  double tol = default_tol;
  bool pass = true;
  bool skipped = false;
  std::string skip_reason;
  std::vector<std::string> flags;

  // Largest residual among contexts at one time (0 when none).
  double max_residual_at(int time) const;
};

//=========================================================================
// Criteria
//=========================================================================

// Marginalising the outcomes at any time must reproduce the statistics of
// not measuring there. Residual per (history, future) context:
// |tr[rho~_i (K_i^dagger[Q_i] - Q_i)]|, cross-checked against the
// skip-vs-marginalise comparison of the full distributions.
CheckResult check_kolmogorov(const MarkovProcess &p, double tol = default_tol);

// ||[K_i^{(m_i)}, Q_i(future)]|| per (time, outcome, future).
CheckResult check_commutators(const MarkovProcess &p, double tol = default_tol);

// |tr(rho~_i [K, Q])| per context; necessary but not sufficient for
// consistent statistics.
CheckResult check_weak_commutativity(const MarkovProcess &p, double tol = default_tol);

// tr(rho~_i |[K, Q]|) per context; sufficient for consistent statistics.
CheckResult check_absolute_commutativity(const MarkovProcess &p, double tol = default_tol);

//=========================================================================
// Fixed-point analysis
//=========================================================================

struct LuedersResult {
  bool fixed_point = false;
  bool commuting = false;
  bool all_kraus_hermitian = false;
  double fixed_point_residual = 0.0;
  std::vector<std::pair<std::string, double>> commutator_residuals;

  // With Hermitian Kraus operators the two verdicts must coincide; false
  // here signals a numerical inconsistency, not a property of the input.
  bool consistent() const;
};

// Is q invariant under the total adjoint action of the instrument, and does
// every Kraus operator commute with q? Throws on non-PSD q.
LuedersResult check_lueders_fixed_point(const Instrument &instrument, const cmatrix_t &q,
                                        double tol = default_tol);

//=========================================================================
// Attainable-state and effect-projector subspaces
//=========================================================================

// d^2 pure states spanning all Hermitian operators: the computational basis
// projectors plus the +1 eigenstate projectors of the remaining real and
// imaginary index pairs.
std::vector<cmatrix_t> default_initial_set(Eigen::Index d);

// Span of every conditioned state reachable at `time` when the process is
// started from each member of initial_set.
OperatorSubspace compute_H(const MarkovProcess &p, int time,
                           std::span<const cmatrix_t> initial_set,
                           double rank_tol = default_tol);

struct FutureSubspace {
  OperatorSubspace space;
  // True when some post operator has an eigenvalue cluster of rank > 1.
  bool degenerate = false;
};

// Span of all spectral projectors of the post operators at `time` (< n).
FutureSubspace compute_F(const MarkovProcess &p, int time,
                         double degeneracy_tol = default_degeneracy_tol);

// Is the effect-projector span contained in the attainable-state span?
CheckResult check_inclusion(const MarkovProcess &p, int time,
                            std::span<const cmatrix_t> initial_set,
                            double tol = default_tol);

//=========================================================================
// Fixed-basis probing
//=========================================================================

// Instrument whose elements are the rank-1 projectors onto an orthonormal
// basis, labelled by basis index. Throws when the basis is not orthonormal
// or does not have `dim` vectors.
Instrument dephasing_instrument(Eigen::Index dim, std::span<const cvector_t> basis,
                                double tol = default_tol);

// Empty when every instrument of p measures rank-1 projectively in `basis`;
// otherwise a diagnostic saying which instrument breaks the assumption.
std::optional<std::string> verify_fixed_basis_projective(const MarkovProcess &p,
                                                         std::span<const cvector_t> basis,
                                                         double tol = default_tol);

// For rank-1 projective probing in a fixed basis: compare populations of
// adjacent-map compositions with and without an intermediate dephasing,
// per (time, previous outcome, next outcome). Throws when the instruments
// are not rank-1 projective in `basis`.
CheckResult check_ncgd(const MarkovProcess &p, std::span<const cvector_t> basis,
                       double tol = default_tol);

//=========================================================================
// Full analysis
//=========================================================================

struct AnalyzeConfig {
  double tol = default_tol;
  double degeneracy_tol = default_degeneracy_tol;
  // Empty selects default_initial_set(dim).
  std::vector<cmatrix_t> initial_set;
  // Fixed basis for the dephasing criterion; empty skips it.
  std::vector<cvector_t> ncgd_basis;
  // Subset of {"kolmogorov","commutators","weak","absolute","inclusion",
  // "ncgd"}; empty selects all.
  std::vector<std::string> checks;
};

struct AuditRecord {
  std::string rule;
  bool applicable = false;
  bool violated = false;
  std::string note;
};

struct ClassicalityReport {
  std::string process_name;
  Eigen::Index dim = 0;
  int times = 0;
  double tol = default_tol;
  std::vector<bool> instrument_hermitian;
  std::vector<CheckResult> results;
  std::vector<AuditRecord> audits;

  const CheckResult *result(const std::string &criterion) const;
  // True when every selected, non-skipped criterion passes.
  bool all_pass() const;
  std::vector<std::string> audit_violations() const;
};

// Runs the selected criteria and audits the implication lattice between
// their verdicts. Throws std::invalid_argument on an invalid process.
ClassicalityReport analyze(const MarkovProcess &p, const AnalyzeConfig &config = {});

}  // namespace qclass

#endif

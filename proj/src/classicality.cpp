/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qclass/classicality.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qclass {

namespace {

constexpr const char *kAllChecks[] = {"kolmogorov", "commutators", "weak",
                                      "absolute",   "inclusion",   "ncgd"};

void finalize(CheckResult &result) {
  result.max_residual = 0.0;
  for (const auto &ctx : result.contexts) {
    result.max_residual = std::max(result.max_residual, ctx.residual);
  }
  result.pass = result.max_residual < result.tol;
}

OutcomeSequence concat(const OutcomeSequence &history, const OutcomeSequence &future) {
  OutcomeSequence seq = history;
  for (const auto &[t, label] : future.outcomes) seq.push_back(t, label);
  return seq;
}

void require_valid(const MarkovProcess &p, double tol, const char *where) {
  const ValidationReport report = validate_process(p, tol);
  if (!report.valid()) {
    std::string msg = std::string(where) + ": invalid process";
    for (const auto &v : report.violations) msg += "; " + v;
    throw std::invalid_argument(msg);
  }
}

}  // namespace

double CheckResult::max_residual_at(int time) const {
  double max = 0.0;
  for (const auto &ctx : contexts) {
    if (ctx.time == time) max = std::max(max, ctx.residual);
  }
  return max;
}

//=========================================================================
// Criteria
//=========================================================================

CheckResult check_kolmogorov(const MarkovProcess &p, double tol) {
  CheckResult result;
  result.criterion = "kolmogorov";
  result.tol = tol;

  const JointDistribution full = full_distribution(p);
  for (int i = 1; i <= p.times(); ++i) {
    // Operational comparison: measure everywhere and marginalise t_i versus
    // skipping the interrogation at t_i altogether.
    std::set<int> others;
    for (int t = 1; t <= p.times(); ++t) {
      if (t != i) others.insert(t);
    }
    const JointDistribution skipped = full_distribution(p, others);
    const JointDistribution summed = marginalize(full, i);

    const auto posts = all_post_operators(p, i);
    const auto pres = all_pre_states(p, i);
    for (const auto &post : posts) {
      const cmatrix_t drift =
          instrument_total_adjoint(p.instruments[i - 1], post.op) - post.op;
      for (const auto &pre : pres) {
        ContextRecord ctx;
        ctx.time = i;
        ctx.history = pre.history;
        ctx.future = post.future;

        const double weight = std::real(pre.state.mat.trace());
        if (weight < tol) {
          ctx.residual = 0.0;
          ctx.flags.push_back("unreachable");
        } else {
          ctx.residual = std::abs((pre.state.mat * drift).trace());
        }

        const OutcomeSequence key = concat(pre.history, post.future);
        const double *sum_entry = summed.find(key);
        const double *skip_entry = skipped.find(key);
        if (sum_entry && skip_entry) {
          ctx.operational_residual = std::abs(*sum_entry - *skip_entry);
          if (!ctx.flags.empty() && ctx.flags.front() == "unreachable") {
            // keep the forced zero; the operational value is ~0 as well
          } else if (std::abs(*ctx.operational_residual - ctx.residual) > tol) {
            ctx.flags.push_back("operational-mismatch");
          }
        }
        result.contexts.push_back(std::move(ctx));
      }
    }
  }

  finalize(result);
  return result;
}

CheckResult check_commutators(const MarkovProcess &p, double tol) {
  CheckResult result;
  result.criterion = "commutators";
  result.tol = tol;

  for (int i = 1; i <= p.times(); ++i) {
    const auto posts = all_post_operators(p, i);
    for (const auto &[label, kraus] : p.instruments[i - 1].elements) {
      for (const auto &post : posts) {
        ContextRecord ctx;
        ctx.time = i;
        ctx.outcome = label;
        ctx.future = post.future;
        ctx.residual = hs_norm(commutator(kraus, post.op));
        result.contexts.push_back(std::move(ctx));
      }
    }
  }

  finalize(result);
  return result;
}

namespace {

// Shared shape of the two state-weighted commutator criteria.
template <typename Residual>
CheckResult state_weighted_check(const MarkovProcess &p, double tol,
                                 const std::string &criterion, Residual residual_of) {
  CheckResult result;
  result.criterion = criterion;
  result.tol = tol;

  for (int i = 1; i <= p.times(); ++i) {
    const auto posts = all_post_operators(p, i);
    const auto pres = all_pre_states(p, i);
    for (const auto &pre : pres) {
      const double weight = std::real(pre.state.mat.trace());
      for (const auto &[label, kraus] : p.instruments[i - 1].elements) {
        for (const auto &post : posts) {
          ContextRecord ctx;
          ctx.time = i;
          ctx.history = pre.history;
          ctx.outcome = label;
          ctx.future = post.future;
          if (weight < tol) {
            ctx.residual = 0.0;
            ctx.flags.push_back("unreachable");
          } else {
            ctx.residual = residual_of(pre.state.mat, commutator(kraus, post.op));
          }
          result.contexts.push_back(std::move(ctx));
        }
      }
    }
  }

  finalize(result);
  return result;
}

}  // namespace

CheckResult check_weak_commutativity(const MarkovProcess &p, double tol) {
  return state_weighted_check(p, tol, "weak",
                              [](const cmatrix_t &state, const cmatrix_t &comm) {
                                return std::abs((state * comm).trace());
                              });
}

CheckResult check_absolute_commutativity(const MarkovProcess &p, double tol) {
  return state_weighted_check(p, tol, "absolute",
                              [tol](const cmatrix_t &state, const cmatrix_t &comm) {
                                const double value =
                                    std::real((state * abs_value(comm, tol)).trace());
                                return std::max(value, 0.0);
                              });
}

//=========================================================================
// Fixed-point analysis
//=========================================================================

bool LuedersResult::consistent() const {
  return !all_kraus_hermitian || fixed_point == commuting;
}

LuedersResult check_lueders_fixed_point(const Instrument &instrument, const cmatrix_t &q,
                                        double tol) {
  if (instrument.dim() != q.rows() || q.rows() != q.cols()) {
    throw std::invalid_argument("check_lueders_fixed_point: dimension mismatch");
  }
  if (!is_psd(q, tol)) {
    throw std::invalid_argument(
        "check_lueders_fixed_point: operator must be Hermitian positive semi-definite");
  }

  LuedersResult result;
  result.all_kraus_hermitian = instrument.all_hermitian(tol);
  result.fixed_point_residual = hs_norm(instrument_total_adjoint(instrument, q) - q);
  result.fixed_point = result.fixed_point_residual < tol;

  result.commuting = true;
  for (const auto &[label, kraus] : instrument.elements) {
    const double res = hs_norm(commutator(kraus, q));
    result.commutator_residuals.emplace_back(label, res);
    result.commuting &= res < tol;
  }
  return result;
}

//=========================================================================
// Attainable-state and effect-projector subspaces
//=========================================================================

std::vector<cmatrix_t> default_initial_set(Eigen::Index d) {
  std::vector<cmatrix_t> set;
  for (Eigen::Index k = 0; k < d; ++k) {
    set.push_back(projector(basis_ket(d, k)));
  }
  for (Eigen::Index k = 0; k < d; ++k) {
    for (Eigen::Index l = k + 1; l < d; ++l) {
      const cvector_t real_sup =
          (basis_ket(d, k) + basis_ket(d, l)) / std::sqrt(2.0);
      const cvector_t imag_sup =
          (basis_ket(d, k) + complex_t(0, 1) * basis_ket(d, l)) / std::sqrt(2.0);
      set.push_back(projector(real_sup));
      set.push_back(projector(imag_sup));
    }
  }
  return set;
}

OperatorSubspace compute_H(const MarkovProcess &p, int time,
                           std::span<const cmatrix_t> initial_set, double rank_tol) {
  if (time < 1 || time > p.times()) {
    throw std::invalid_argument("compute_H: time outside the process");
  }
  if (initial_set.empty()) {
    throw std::invalid_argument("compute_H: empty initial state set");
  }

  std::vector<cmatrix_t> states;
  if (time == 1) {
    for (const auto &rho : initial_set) {
      const double norm = hs_norm(rho);
      if (norm >= rank_tol) states.push_back(rho / norm);
    }
  } else {
    for (const auto &rho : initial_set) {
      MarkovProcess substituted = p;
      substituted.initial = DensityMatrix{rho, true};
      for (const auto &pre : all_pre_states(substituted, time)) {
        // Branches with vanishing probability carry no attainable direction.
        if (std::real(pre.state.mat.trace()) < rank_tol) continue;
        states.push_back(pre.state.mat / hs_norm(pre.state.mat));
      }
    }
  }
  if (states.empty()) {
    throw std::invalid_argument("compute_H: no reachable states at the requested time");
  }
  return subspace_span(states, rank_tol);
}

FutureSubspace compute_F(const MarkovProcess &p, int time, double degeneracy_tol) {
  if (time < 1 || time >= p.times()) {
    throw std::invalid_argument("compute_F: time must lie before the final measurement");
  }

  FutureSubspace result;
  std::vector<cmatrix_t> projectors;
  for (const auto &post : all_post_operators(p, time)) {
    const HermitianSpectrum spec = herm_eig(post.op, degeneracy_tol);
    result.degenerate |= spec.degenerate();
    for (const auto &proj : spec.projectors) projectors.push_back(proj);
  }
  result.space = subspace_span(projectors);
  return result;
}

CheckResult check_inclusion(const MarkovProcess &p, int time,
                            std::span<const cmatrix_t> initial_set, double tol) {
  CheckResult result;
  result.criterion = "inclusion";
  result.tol = tol;

  const OperatorSubspace attainable = compute_H(p, time, initial_set, tol);
  const FutureSubspace effects = compute_F(p, time);
  const InclusionResult inclusion = subspace_contains(attainable, effects.space, tol);

  ContextRecord ctx;
  ctx.time = time;
  ctx.residual = inclusion.residual;
  if (effects.degenerate) ctx.flags.push_back("degenerate-post-operator");
  if (!p.instruments[time - 1].all_hermitian(tol)) ctx.flags.push_back("non-hermitian-kraus");
  result.contexts.push_back(std::move(ctx));

  finalize(result);
  return result;
}

//=========================================================================
// Fixed-basis probing
//=========================================================================

Instrument dephasing_instrument(Eigen::Index dim, std::span<const cvector_t> basis,
                                double tol) {
  if (static_cast<Eigen::Index>(basis.size()) != dim) {
    throw std::invalid_argument("dephasing_instrument: need exactly dim basis vectors");
  }
  for (std::size_t a = 0; a < basis.size(); ++a) {
    if (basis[a].size() != dim) {
      throw std::invalid_argument("dephasing_instrument: basis vector of wrong dimension");
    }
    for (std::size_t b = 0; b < basis.size(); ++b) {
      const complex_t overlap = basis[a].dot(basis[b]);
      const double expected = a == b ? 1.0 : 0.0;
      if (std::abs(overlap - expected) > tol) {
        throw std::invalid_argument("dephasing_instrument: basis is not orthonormal");
      }
    }
  }

  Instrument instrument;
  for (std::size_t k = 0; k < basis.size(); ++k) {
    instrument.elements.emplace_back(std::to_string(k), projector(basis[k]));
  }
  return instrument;
}

namespace {

// Maps each outcome label of the instrument to the index of the basis
// projector it implements, or nullopt if the instrument is not a rank-1
// projective measurement in this basis.
std::optional<std::vector<std::pair<std::string, std::size_t>>>
match_projective(const Instrument &instrument, std::span<const cvector_t> basis,
                 double tol) {
  if (instrument.elements.size() != basis.size()) return std::nullopt;
  std::vector<bool> used(basis.size(), false);
  std::vector<std::pair<std::string, std::size_t>> mapping;
  for (const auto &[label, op] : instrument.elements) {
    bool matched = false;
    for (std::size_t k = 0; k < basis.size(); ++k) {
      if (!used[k] && (op - projector(basis[k])).norm() <= tol) {
        used[k] = true;
        mapping.emplace_back(label, k);
        matched = true;
        break;
      }
    }
    if (!matched) return std::nullopt;
  }
  return mapping;
}

cmatrix_t dephase(const cmatrix_t &rho, std::span<const cvector_t> basis) {
  cmatrix_t out = cmatrix_t::Zero(rho.rows(), rho.cols());
  for (const auto &vec : basis) {
    out += vec.dot(rho * vec) * projector(vec);
  }
  return out;
}

}  // namespace

std::optional<std::string> verify_fixed_basis_projective(const MarkovProcess &p,
                                                         std::span<const cvector_t> basis,
                                                         double tol) {
  if (static_cast<Eigen::Index>(basis.size()) != p.dim) {
    return "fixed basis must have exactly " + std::to_string(p.dim) + " vectors";
  }
  for (std::size_t i = 0; i < p.instruments.size(); ++i) {
    if (!match_projective(p.instruments[i], basis, tol)) {
      return "instrument " + std::to_string(i + 1) +
             " is not a rank-1 projective measurement in the fixed basis";
    }
  }
  return std::nullopt;
}

CheckResult check_ncgd(const MarkovProcess &p, std::span<const cvector_t> basis,
                       double tol) {
  if (auto err = verify_fixed_basis_projective(p, basis, tol)) {
    throw std::invalid_argument("check_ncgd: " + *err);
  }

  CheckResult result;
  result.criterion = "ncgd";
  result.tol = tol;
  if (p.times() < 3) {
    result.flags.push_back("no-interior-times");
  }

  for (int i = 2; i < p.times(); ++i) {
    const auto prev = *match_projective(p.instruments[i - 2], basis, tol);
    const auto next = *match_projective(p.instruments[i], basis, tol);
    for (const auto &[prev_label, prev_idx] : prev) {
      const cmatrix_t evolved = apply_map(p.dynamics[i - 2], projector(basis[prev_idx]));
      const cmatrix_t direct = apply_map(p.dynamics[i - 1], evolved);
      const cmatrix_t dephased = apply_map(p.dynamics[i - 1], dephase(evolved, basis));
      for (const auto &[next_label, next_idx] : next) {
        const cvector_t &vec = basis[next_idx];
        const complex_t lhs = vec.dot(dephased * vec);
        const complex_t rhs = vec.dot(direct * vec);

        ContextRecord ctx;
        ctx.time = i;
        ctx.history.push_back(i - 1, prev_label);
        ctx.future.push_back(i + 1, next_label);
        ctx.residual = std::abs(lhs - rhs);
        result.contexts.push_back(std::move(ctx));
      }
    }
  }

  finalize(result);
  return result;
}

//=========================================================================
// Full analysis
//=========================================================================

const CheckResult *ClassicalityReport::result(const std::string &criterion) const {
  for (const auto &r : results) {
    if (r.criterion == criterion) return &r;
  }
  return nullptr;
}

bool ClassicalityReport::all_pass() const {
  for (const auto &r : results) {
    if (!r.skipped && !r.pass) return false;
  }
  return true;
}

std::vector<std::string> ClassicalityReport::audit_violations() const {
  std::vector<std::string> out;
  for (const auto &a : audits) {
    if (a.violated) out.push_back(a.rule);
  }
  return out;
}

namespace {

// Largest consistency residual at one time (algebraic form only); used to
// decide whether consistency holds for every member of the initial set.
double kolmogorov_residual_at(const MarkovProcess &p, int time, double tol) {
  double max = 0.0;
  const auto posts = all_post_operators(p, time);
  const auto pres = all_pre_states(p, time);
  for (const auto &post : posts) {
    const cmatrix_t drift =
        instrument_total_adjoint(p.instruments[time - 1], post.op) - post.op;
    for (const auto &pre : pres) {
      if (std::real(pre.state.mat.trace()) < tol) continue;
      max = std::max(max, std::abs((pre.state.mat * drift).trace()));
    }
  }
  return max;
}

bool selected(const std::vector<std::string> &checks, const std::string &name) {
  if (checks.empty()) return true;
  return std::find(checks.begin(), checks.end(), name) != checks.end();
}

}  // namespace

ClassicalityReport analyze(const MarkovProcess &p, const AnalyzeConfig &config) {
  require_valid(p, config.tol, "analyze");
  for (const auto &name : config.checks) {
    if (std::find(std::begin(kAllChecks), std::end(kAllChecks), name) ==
        std::end(kAllChecks)) {
      throw std::invalid_argument("analyze: unknown check '" + name + "'");
    }
  }

  const double tol = config.tol;
  ClassicalityReport report;
  report.process_name = p.name;
  report.dim = p.dim;
  report.times = p.times();
  report.tol = tol;
  for (const auto &instrument : p.instruments) {
    report.instrument_hermitian.push_back(instrument.all_hermitian(tol));
  }

  const std::vector<cmatrix_t> initial_set =
      config.initial_set.empty() ? default_initial_set(p.dim) : config.initial_set;

  if (selected(config.checks, "kolmogorov")) {
    report.results.push_back(check_kolmogorov(p, tol));
  }
  if (selected(config.checks, "commutators")) {
    report.results.push_back(check_commutators(p, tol));
  }
  if (selected(config.checks, "weak")) {
    report.results.push_back(check_weak_commutativity(p, tol));
  }
  if (selected(config.checks, "absolute")) {
    report.results.push_back(check_absolute_commutativity(p, tol));
  }

  std::vector<bool> effects_degenerate(static_cast<std::size_t>(p.times()), false);
  if (selected(config.checks, "inclusion")) {
    CheckResult inclusion;
    inclusion.criterion = "inclusion";
    inclusion.tol = tol;
    if (p.times() < 2) {
      inclusion.flags.push_back("no-intermediate-times");
    }
    for (int i = 1; i < p.times(); ++i) {
      CheckResult at_time = check_inclusion(p, i, initial_set, tol);
      effects_degenerate[static_cast<std::size_t>(i - 1)] =
          !at_time.contexts.empty() &&
          std::find(at_time.contexts.front().flags.begin(),
                    at_time.contexts.front().flags.end(),
                    "degenerate-post-operator") != at_time.contexts.front().flags.end();
      for (auto &ctx : at_time.contexts) inclusion.contexts.push_back(std::move(ctx));
    }
    finalize(inclusion);
    report.results.push_back(std::move(inclusion));
  }

  if (selected(config.checks, "ncgd")) {
    CheckResult ncgd;
    ncgd.criterion = "ncgd";
    ncgd.tol = tol;
    if (config.ncgd_basis.empty()) {
      ncgd.skipped = true;
      ncgd.skip_reason = "no fixed basis declared";
    } else if (auto err = verify_fixed_basis_projective(p, config.ncgd_basis, tol)) {
      ncgd.skipped = true;
      ncgd.skip_reason = *err;
    } else {
      ncgd = check_ncgd(p, config.ncgd_basis, tol);
    }
    report.results.push_back(std::move(ncgd));
  }

  //-----------------------------------------------------------------------
  // Implication audit
  //-----------------------------------------------------------------------

  const CheckResult *kolmogorov = report.result("kolmogorov");
  const CheckResult *commutators = report.result("commutators");
  const CheckResult *weak = report.result("weak");
  const CheckResult *absolute = report.result("absolute");
  const CheckResult *inclusion = report.result("inclusion");
  const CheckResult *ncgd = report.result("ncgd");

  auto implication = [&report](const std::string &rule, const CheckResult *from,
                               const CheckResult *to) {
    AuditRecord audit;
    audit.rule = rule;
    if (!from || !to || from->skipped || to->skipped) {
      audit.note = "criterion not evaluated";
    } else {
      audit.applicable = from->pass;
      audit.violated = from->pass && !to->pass;
      if (!from->pass) audit.note = "hypothesis fails";
    }
    report.audits.push_back(std::move(audit));
  };

  implication("commutators=>absolute", commutators, absolute);
  implication("commutators=>weak", commutators, weak);
  implication("commutators=>kolmogorov", commutators, kolmogorov);
  implication("absolute=>kolmogorov", absolute, kolmogorov);
  implication("absolute=>weak", absolute, weak);

  // Restricted converse: Hermitian instrument, non-degenerate effects,
  // inclusion and consistency for every initial state together force the
  // commutators at that time to vanish.
  for (int i = 1; i < report.times; ++i) {
    AuditRecord audit;
    audit.rule = "inclusion+consistency=>commutators@t" + std::to_string(i);
    if (!commutators || !inclusion) {
      audit.note = "criterion not evaluated";
      report.audits.push_back(std::move(audit));
      continue;
    }
    if (!report.instrument_hermitian[static_cast<std::size_t>(i - 1)]) {
      audit.note = "non-Hermitian Kraus operators";
    } else if (effects_degenerate[static_cast<std::size_t>(i - 1)]) {
      audit.note = "degenerate post operator";
    } else if (inclusion->max_residual_at(i) >= tol) {
      audit.note = "inclusion fails";
    } else {
      bool consistent_for_all = true;
      for (const auto &rho : initial_set) {
        MarkovProcess substituted = p;
        substituted.initial = DensityMatrix{rho, true};
        if (kolmogorov_residual_at(substituted, i, tol) >= tol) {
          consistent_for_all = false;
          break;
        }
      }
      if (!consistent_for_all) {
        audit.note = "consistency fails for some initial state";
      } else {
        audit.applicable = true;
        audit.violated = commutators->max_residual_at(i) >= tol;
      }
    }
    report.audits.push_back(std::move(audit));
  }

  // For rank-1 fixed-basis probing of a basis-diagonal initial state the
  // dephasing criterion and consistency coincide; failing dephasing contexts
  // are only visible in the statistics with the weight of a reachable
  // history and a non-vanishing future effect.
  if (ncgd && kolmogorov && !ncgd->skipped && !kolmogorov->skipped) {
    const bool diagonal_initial =
        (dephase(p.initial.mat, config.ncgd_basis) - p.initial.mat).norm() <= tol;

    AuditRecord forward;
    forward.rule = "ncgd=>kolmogorov";
    AuditRecord backward;
    backward.rule = "kolmogorov=>ncgd";

    if (!diagonal_initial) {
      forward.note = "initial state not diagonal in the fixed basis";
      backward.note = forward.note;
    } else {
      forward.applicable = ncgd->pass;
      forward.violated = ncgd->pass && !kolmogorov->pass;

      backward.applicable = kolmogorov->pass;
      if (kolmogorov->pass && !ncgd->pass) {
        // The statistics can only miss a dephasing failure when every
        // matching context has negligible weight.
        bool witnessed = false;
        for (const auto &ctx : ncgd->contexts) {
          if (ctx.residual < tol) continue;
          const int i = ctx.time;
          const std::string &prev_label = ctx.history.outcomes.front().second;
          const std::string &next_label = ctx.future.outcomes.front().second;

          double history_weight = 0.0;
          for (const auto &pre : all_pre_states(p, i)) {
            if (!pre.history.outcomes.empty() &&
                pre.history.outcomes.back().second == prev_label) {
              history_weight =
                  std::max(history_weight, std::real(pre.state.mat.trace()));
            }
          }
          const auto next_map = match_projective(p.instruments[static_cast<std::size_t>(i)],
                                                 config.ncgd_basis, tol);
          std::size_t next_idx = 0;
          for (const auto &[label, idx] : *next_map) {
            if (label == next_label) next_idx = idx;
          }
          const cvector_t &vec = config.ncgd_basis[next_idx];
          double future_weight = 0.0;
          for (const auto &post : all_post_operators(p, i + 1)) {
            future_weight = std::max(future_weight, std::real(vec.dot(post.op * vec)));
          }
          if (ctx.residual * history_weight * future_weight >= tol) {
            witnessed = true;
            break;
          }
        }
        backward.violated = witnessed;
        if (!witnessed) backward.note = "failing contexts carry no statistical weight";
      }
    }
    report.audits.push_back(std::move(forward));
    report.audits.push_back(std::move(backward));
  }

  return report;
}

}  // namespace qclass

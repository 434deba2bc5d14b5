/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qclass/process.hpp"

#include <set>
#include <sstream>
#include <stdexcept>

namespace qclass {

namespace {

std::string fmt_residual(double r) {
  std::ostringstream out;
  out.precision(3);
  out << r;
  return out.str();
}

}  // namespace

//=========================================================================
// Instrument / OutcomeSequence helpers
//=========================================================================

const cmatrix_t *Instrument::find(const std::string &label) const {
  for (const auto &[name, op] : elements) {
    if (name == label) return &op;
  }
  return nullptr;
}

bool Instrument::all_hermitian(double tol) const {
  for (const auto &[name, op] : elements) {
    if (!is_hermitian(op, tol)) return false;
  }
  return true;
}

const std::string *OutcomeSequence::label_at(int time) const {
  for (const auto &[t, label] : outcomes) {
    if (t == time) return &label;
  }
  return nullptr;
}

std::string OutcomeSequence::str() const {
  std::string out;
  for (const auto &[t, label] : outcomes) {
    if (!out.empty()) out += ",";
    out += "t" + std::to_string(t) + "=" + label;
  }
  return out.empty() ? "-" : out;
}

//=========================================================================
// Validation
//=========================================================================

bool ValidationReport::all_hermitian() const {
  for (bool h : instrument_hermitian) {
    if (!h) return false;
  }
  return true;
}

ValidationReport validate_process(const MarkovProcess &p, double tol) {
  ValidationReport report;
  auto fail = [&report](const std::string &msg) { report.violations.push_back(msg); };

  const Eigen::Index d = p.dim;
  if (d <= 0) fail("process: dimension must be positive");

  auto check_matrix = [&](const cmatrix_t &m, const std::string &name) {
    bool ok = true;
    if (m.rows() != d || m.cols() != d) {
      fail(name + ": expected a " + std::to_string(d) + "x" + std::to_string(d) + " matrix");
      ok = false;
    }
    if (!is_finite(m)) {
      fail(name + ": entries must be finite");
      ok = false;
    }
    return ok;
  };

  // Initial state: Hermitian, PSD, unit trace.
  if (check_matrix(p.initial.mat, "initial state")) {
    if (!is_hermitian(p.initial.mat, tol)) {
      fail("initial state: not Hermitian");
    } else {
      Eigen::SelfAdjointEigenSolver<cmatrix_t> es(p.initial.mat, Eigen::EigenvaluesOnly);
      if (es.eigenvalues().minCoeff() < -tol) {
        fail("initial state: not positive semi-definite");
      }
    }
    const double tr = std::real(p.initial.mat.trace());
    if (p.initial.normalized) {
      if (std::abs(tr - 1.0) > tol) {
        fail("initial state: trace " + fmt_residual(tr) + " differs from 1");
      }
    } else if (tr < -tol || tr > 1.0 + tol) {
      fail("initial state: subnormalised trace outside [0, 1]");
    }
  }

  if (p.dynamics.size() + 1 != p.instruments.size()) {
    fail("process: need exactly one intermediate map between consecutive times (" +
         std::to_string(p.dynamics.size()) + " maps for " +
         std::to_string(p.instruments.size()) + " instruments)");
  }

  for (std::size_t i = 0; i < p.dynamics.size(); ++i) {
    const auto &map = p.dynamics[i];
    const std::string name =
        "dynamics " + std::to_string(i + 1) + " (t" + std::to_string(i + 1) +
        "->t" + std::to_string(i + 2) + ")";
    if (map.ops.empty()) {
      fail(name + ": empty Kraus set");
      continue;
    }
    bool ok = true;
    for (std::size_t l = 0; l < map.ops.size(); ++l) {
      ok &= check_matrix(map.ops[l], name + ", Kraus " + std::to_string(l + 1));
    }
    if (!ok) continue;
    cmatrix_t sum = cmatrix_t::Zero(d, d);
    for (const auto &op : map.ops) sum += op.adjoint() * op;
    const double res = (sum - identity_matrix(d)).norm();
    if (res > tol) {
      fail(name + ": not trace preserving (completeness residual " + fmt_residual(res) + ")");
    }
  }

  for (std::size_t i = 0; i < p.instruments.size(); ++i) {
    const auto &inst = p.instruments[i];
    const std::string name = "instrument " + std::to_string(i + 1);
    if (inst.elements.empty()) {
      fail(name + ": needs at least one outcome");
      report.instrument_hermitian.push_back(false);
      continue;
    }
    bool ok = true;
    std::set<std::string> labels;
    for (const auto &[label, op] : inst.elements) {
      if (!labels.insert(label).second) {
        fail(name + ": duplicate outcome label '" + label + "'");
        ok = false;
      }
      ok &= check_matrix(op, name + ", outcome '" + label + "'");
    }
    if (!ok) {
      report.instrument_hermitian.push_back(false);
      continue;
    }
    cmatrix_t sum = cmatrix_t::Zero(d, d);
    for (const auto &[label, op] : inst.elements) sum += op.adjoint() * op;
    const double res = (sum - identity_matrix(d)).norm();
    if (res > tol) {
      fail(name + ": outcomes do not sum to a CPTP map (completeness residual " +
           fmt_residual(res) + ")");
    }
    report.instrument_hermitian.push_back(inst.all_hermitian(tol));
  }

  return report;
}

std::optional<std::string> sequence_error(const MarkovProcess &p,
                                          const OutcomeSequence &seq,
                                          bool require_complete) {
  int prev = 0;
  for (const auto &[t, label] : seq.outcomes) {
    if (t <= prev) {
      return "outcome sequence: time indices must be strictly increasing";
    }
    if (t > p.times()) {
      return "outcome sequence: time t" + std::to_string(t) + " beyond the last time t" +
             std::to_string(p.times());
    }
    if (!p.instruments[t - 1].find(label)) {
      return "outcome sequence: unknown outcome '" + label + "' at time t" + std::to_string(t);
    }
    prev = t;
  }
  if (require_complete && static_cast<int>(seq.size()) != p.times()) {
    return "outcome sequence: expected one outcome for each of the " +
           std::to_string(p.times()) + " times";
  }
  return std::nullopt;
}

//=========================================================================
// Map application
//=========================================================================

cmatrix_t apply_map(const KrausSet &map, const cmatrix_t &rho) {
  if (map.ops.empty() || map.dim() != rho.rows() || rho.rows() != rho.cols()) {
    throw std::invalid_argument("apply_map: dimension mismatch");
  }
  cmatrix_t out = cmatrix_t::Zero(rho.rows(), rho.cols());
  for (const auto &op : map.ops) out += op * rho * op.adjoint();
  return out;
}

DensityMatrix apply_map(const KrausSet &map, const DensityMatrix &rho) {
  return DensityMatrix{apply_map(map, rho.mat), rho.normalized};
}

cmatrix_t apply_adjoint_map(const KrausSet &map, const cmatrix_t &q) {
  if (map.ops.empty() || map.dim() != q.rows() || q.rows() != q.cols()) {
    throw std::invalid_argument("apply_adjoint_map: dimension mismatch");
  }
  cmatrix_t out = cmatrix_t::Zero(q.rows(), q.cols());
  for (const auto &op : map.ops) out += op.adjoint() * q * op;
  return out;
}

cmatrix_t instrument_total_adjoint(const Instrument &instrument, const cmatrix_t &q) {
  if (instrument.elements.empty() || instrument.dim() != q.rows() || q.rows() != q.cols()) {
    throw std::invalid_argument("instrument_total_adjoint: dimension mismatch");
  }
  cmatrix_t out = cmatrix_t::Zero(q.rows(), q.cols());
  for (const auto &[label, op] : instrument.elements) out += op.adjoint() * q * op;
  return out;
}

}  // namespace qclass

/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#include "qclass/opmat.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qclass {

//=========================================================================
// Basic operator algebra
//=========================================================================

cmatrix_t adjoint(const cmatrix_t &a) { return a.adjoint(); }

cmatrix_t commutator(const cmatrix_t &a, const cmatrix_t &b) {
  if (a.rows() != b.rows() || a.cols() != b.cols() || a.rows() != a.cols()) {
    throw std::invalid_argument("commutator: operands must be square matrices of equal dimension");
  }
  return a * b - b * a;
}

complex_t hs_inner(const cmatrix_t &a, const cmatrix_t &b) {
  return (a.adjoint() * b).trace();
}

double hs_norm(const cmatrix_t &a) { return a.norm(); }

bool is_finite(const cmatrix_t &a) { return a.allFinite(); }

bool is_hermitian(const cmatrix_t &a, double tol) {
  if (a.rows() != a.cols()) return false;
  return (a - a.adjoint()).norm() <= tol;
}

bool is_psd(const cmatrix_t &a, double tol) {
  if (!is_hermitian(a, tol)) return false;
  Eigen::SelfAdjointEigenSolver<cmatrix_t> es(a, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol;
}

//=========================================================================
// Hermitian spectral analysis
//=========================================================================

bool HermitianSpectrum::degenerate() const {
  for (const auto &p : projectors) {
    if (std::real(p.trace()) > 1.5) return true;
  }
  return false;
}

HermitianSpectrum herm_eig(const cmatrix_t &h, double degeneracy_tol,
                           double hermitian_tol) {
  if (h.rows() != h.cols()) {
    throw std::invalid_argument("herm_eig: input must be square");
  }
  if (!is_hermitian(h, hermitian_tol)) {
    throw std::invalid_argument("herm_eig: input is not Hermitian within tolerance");
  }

  Eigen::SelfAdjointEigenSolver<cmatrix_t> es(h);
  const auto &vals = es.eigenvalues();   // ascending
  const auto &vecs = es.eigenvectors();
  const Eigen::Index d = h.rows();

  // Group ascending eigenvalues into clusters whose internal spread stays
  // below degeneracy_tol.
  HermitianSpectrum spec;
  Eigen::Index k = 0;
  while (k < d) {
    Eigen::Index end = k + 1;
    while (end < d && vals(end) - vals(k) < degeneracy_tol) ++end;
    cmatrix_t proj = cmatrix_t::Zero(d, d);
    double mean = 0.0;
    for (Eigen::Index j = k; j < end; ++j) {
      proj += vecs.col(j) * vecs.col(j).adjoint();
      mean += vals(j);
    }
    mean /= static_cast<double>(end - k);
    spec.eigenvalues.push_back(mean);
    spec.projectors.push_back(std::move(proj));
    k = end;
  }

  std::reverse(spec.eigenvalues.begin(), spec.eigenvalues.end());
  std::reverse(spec.projectors.begin(), spec.projectors.end());
  return spec;
}

cmatrix_t psd_sqrt(const cmatrix_t &p, double tol) {
  if (p.rows() != p.cols()) {
    throw std::invalid_argument("psd_sqrt: input must be square");
  }
  if (!is_hermitian(p, tol)) {
    throw std::invalid_argument("psd_sqrt: input is not Hermitian within tolerance");
  }
  Eigen::SelfAdjointEigenSolver<cmatrix_t> es(p);
  Eigen::VectorXd vals = es.eigenvalues();
  for (Eigen::Index i = 0; i < vals.size(); ++i) {
    if (vals(i) < -tol) {
      throw std::invalid_argument("psd_sqrt: input has an eigenvalue below -tol");
    }
    vals(i) = std::sqrt(std::max(vals(i), 0.0));
  }
  cmatrix_t root = es.eigenvectors() * vals.asDiagonal() * es.eigenvectors().adjoint();
  return (root + root.adjoint()) / 2.0;
}

cmatrix_t abs_value(const cmatrix_t &x, double tol) {
  if (x.rows() != x.cols()) {
    throw std::invalid_argument("abs_value: input must be square");
  }
  cmatrix_t gram = x.adjoint() * x;
  return psd_sqrt((gram + gram.adjoint()) / 2.0, tol);
}

PolarDecomposition polar_decompose(const cmatrix_t &x) {
  if (x.rows() != x.cols()) {
    throw std::invalid_argument("polar_decompose: input must be square");
  }
  Eigen::JacobiSVD<cmatrix_t> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const cmatrix_t &u = svd.matrixU();
  const cmatrix_t &w = svd.matrixV();
  cmatrix_t positive =
      w * svd.singularValues().cast<complex_t>().asDiagonal() * w.adjoint();
  return PolarDecomposition{u * w.adjoint(), (positive + positive.adjoint()) / 2.0};
}

//=========================================================================
// Operator subspaces
//=========================================================================

OperatorSubspace subspace_span(std::span<const cmatrix_t> ops, double rank_tol) {
  if (ops.empty()) {
    throw std::invalid_argument("subspace_span: empty operator list");
  }
  const Eigen::Index d = ops.front().rows();
  for (const auto &op : ops) {
    if (op.rows() != d || op.cols() != d) {
      throw std::invalid_argument("subspace_span: operators must share one dimension");
    }
  }

  OperatorSubspace space;
  space.dim = d;
  for (const auto &op : ops) {
    cmatrix_t v = op;
    // Two Gram-Schmidt sweeps keep the basis orthonormal to machine
    // precision even for nearly dependent inputs.
    for (int sweep = 0; sweep < 2; ++sweep) {
      for (const auto &e : space.basis) {
        v -= hs_inner(e, v) * e;
      }
    }
    const double norm = hs_norm(v);
    if (norm >= rank_tol) {
      space.basis.push_back(v / norm);
    }
  }
  return space;
}

InclusionResult subspace_contains(const OperatorSubspace &outer,
                                  const OperatorSubspace &inner, double tol) {
  if (outer.dim != inner.dim) {
    throw std::invalid_argument("subspace_contains: ambient dimensions differ");
  }
  InclusionResult result;
  result.contained = true;
  for (const auto &b : inner.basis) {
    cmatrix_t res = b;
    for (const auto &e : outer.basis) {
      res -= hs_inner(e, b) * e;
    }
    result.residual = std::max(result.residual, hs_norm(res));
  }
  result.contained = result.residual < tol;
  return result;
}

//=========================================================================
// Fixed operators and states
//=========================================================================

cmatrix_t identity_matrix(Eigen::Index d) { return cmatrix_t::Identity(d, d); }

cmatrix_t pauli_x() {
  cmatrix_t m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

cmatrix_t pauli_y() {
  cmatrix_t m(2, 2);
  m << 0, complex_t(0, -1), complex_t(0, 1), 0;
  return m;
}

cmatrix_t pauli_z() {
  cmatrix_t m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

cmatrix_t hadamard() {
  cmatrix_t m(2, 2);
  const double s = 1.0 / std::sqrt(2.0);
  m << s, s, s, -s;
  return m;
}

cvector_t basis_ket(Eigen::Index d, Eigen::Index k) {
  cvector_t v = cvector_t::Zero(d);
  v(k) = 1.0;
  return v;
}

cvector_t ket_plus() {
  cvector_t v(2);
  v << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(2.0);
  return v;
}

cvector_t ket_minus() {
  cvector_t v(2);
  v << 1.0 / std::sqrt(2.0), -1.0 / std::sqrt(2.0);
  return v;
}

cvector_t ket_plus_i() {
  cvector_t v(2);
  v << complex_t(1.0 / std::sqrt(2.0), 0), complex_t(0, 1.0 / std::sqrt(2.0));
  return v;
}

cvector_t ket_minus_i() {
  cvector_t v(2);
  v << complex_t(1.0 / std::sqrt(2.0), 0), complex_t(0, -1.0 / std::sqrt(2.0));
  return v;
}

cmatrix_t projector(const cvector_t &v) { return v * v.adjoint(); }

}  // namespace qclass

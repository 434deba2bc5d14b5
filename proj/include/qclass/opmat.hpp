/**
 * This code is part of qclass.
 *
 * This code is licensed under the Apache License, Version 2.0. You may
 * obtain a copy of this license at http://www.apache.org/licenses/LICENSE-2.0.
 */

#ifndef QCLASS_OPMAT_HPP
#define QCLASS_OPMAT_HPP

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qclass {

using complex_t = std::complex<double>;
using cmatrix_t = Eigen::MatrixXcd;
using cvector_t = Eigen::VectorXcd;

// Global absolute tolerance. All operators handled by this library are
// O(1)-normalised density / Kraus / effect operators, so a single absolute
// scale is adequate.
inline constexpr double default_tol = 1e-9;

// Eigenvalues of a Hermitian operator whose spread stays below this bound
// are merged into one degenerate cluster.
inline constexpr double default_degeneracy_tol = 1e-8;

//=========================================================================
// Basic operator algebra
//=========================================================================

cmatrix_t adjoint(const cmatrix_t &a);

// a*b - b*a; throws std::invalid_argument on dimension mismatch.
cmatrix_t commutator(const cmatrix_t &a, const cmatrix_t &b);

// Hilbert-Schmidt inner product tr(a^dagger b) and the induced (Frobenius)
// norm. This is the inner product under which operator subspaces below are
// orthonormalised.
complex_t hs_inner(const cmatrix_t &a, const cmatrix_t &b);
double hs_norm(const cmatrix_t &a);

bool is_finite(const cmatrix_t &a);
bool is_hermitian(const cmatrix_t &a, double tol = default_tol);
bool is_psd(const cmatrix_t &a, double tol = default_tol);

//=========================================================================
// Hermitian spectral analysis
//=========================================================================

// Spectral decomposition H = sum_mu lambda_mu P_mu with strictly descending
// eigenvalues after degeneracy grouping and mutually orthogonal projectors.
struct HermitianSpectrum {
  std::vector<double> eigenvalues;
  std::vector<cmatrix_t> projectors;

  // True when some cluster projector has rank > 1.
  bool degenerate() const;
};

// Throws std::invalid_argument unless h is Hermitian within hermitian_tol.
HermitianSpectrum herm_eig(const cmatrix_t &h,
                           double degeneracy_tol = default_degeneracy_tol,
                           double hermitian_tol = default_tol);

// Hermitian PSD square root. Eigenvalues in [-tol, 0) are clamped to zero;
// anything below -tol throws std::invalid_argument.
cmatrix_t psd_sqrt(const cmatrix_t &p, double tol = default_tol);

// |x| = sqrt(x^dagger x), defined for any square matrix.
cmatrix_t abs_value(const cmatrix_t &x, double tol = default_tol);

// x = unitary * positive with positive = |x|. For rank-deficient x the
// unitary is completed on the kernel by pairing leftover left/right singular
// vectors in index order, which keeps the result deterministic.
struct PolarDecomposition {
  cmatrix_t unitary;
  cmatrix_t positive;
};

PolarDecomposition polar_decompose(const cmatrix_t &x);

//=========================================================================
// Operator subspaces
//=========================================================================

// A subspace of d x d operators with a basis orthonormal under hs_inner.
struct OperatorSubspace {
  Eigen::Index dim = 0;  // ambient matrix dimension
  std::vector<cmatrix_t> basis;

  Eigen::Index size() const { return static_cast<Eigen::Index>(basis.size()); }
};

// Orthonormal basis of the complex linear span of ops, built by
// rank-revealing Gram-Schmidt; components with residual norm below rank_tol
// are discarded. Throws std::invalid_argument on an empty input list.
OperatorSubspace subspace_span(std::span<const cmatrix_t> ops,
                               double rank_tol = default_tol);

struct InclusionResult {
  bool contained = false;
  double residual = 0.0;  // max Hilbert-Schmidt norm of a projection residual
};

// Tests whether every element of inner lies in the span of outer.
InclusionResult subspace_contains(const OperatorSubspace &outer,
                                  const OperatorSubspace &inner,
                                  double tol = default_tol);

//=========================================================================
// Fixed operators and states
//=========================================================================

cmatrix_t identity_matrix(Eigen::Index d);
cmatrix_t pauli_x();
cmatrix_t pauli_y();
cmatrix_t pauli_z();
cmatrix_t hadamard();

cvector_t basis_ket(Eigen::Index d, Eigen::Index k);
cvector_t ket_plus();
cvector_t ket_minus();
cvector_t ket_plus_i();
cvector_t ket_minus_i();

// |v><v| (no normalisation applied).
cmatrix_t projector(const cvector_t &v);

}  // namespace qclass

#endif

#pragma once

#include <vector>

#include "absnorm/matrix.hpp"

namespace absnorm {

/// Eigendecomposition H = vectors · diag(values) · vectors*.
struct HermitianEigen {
  std::vector<double> values;  // non-increasing
  ComplexMatrix vectors;       // orthonormal eigenvectors as columns
  int sweeps = 0;
};

/// Singular value decomposition A = left · diag(values) · right*.
struct SingularValueDecomposition {
  std::vector<double> values;  // non-increasing
  ComplexMatrix left;          // unitary
  ComplexMatrix right;         // unitary
};

/// A = unitary · psd with psd = |A|.
struct PolarFactors {
  ComplexMatrix unitary;
  ComplexMatrix psd;
  std::vector<double> singular_values;  // non-increasing, eigenvalues of psd
};

inline constexpr int kMaxJacobiSweeps = 60;

/// Cyclic complex Jacobi. Throws PreconditionError when H is not Hermitian
/// (‖H − H*‖_F > 1e-12·(1+‖H‖_F)) and ConvergenceError after kMaxJacobiSweeps.
HermitianEigen hermitian_eigen(const ComplexMatrix& h);

/// One-sided (Hestenes) Jacobi SVD. Columns of `left` belonging to zero
/// singular values are an orthonormal completion, so `left` is always unitary.
SingularValueDecomposition svd(const ComplexMatrix& a);

/// Singular values s_1 ≥ … ≥ s_n.
std::vector<double> singular_values(const ComplexMatrix& a);

/// |A| = (A*A)^{1/2}, built from the SVD as right · Σ · right*.
ComplexMatrix matrix_abs(const ComplexMatrix& a);

/// |A| computed from the eigendecomposition of A*A, clamping eigenvalues in
/// [−ε, 0) with ε = 1e-12·(1+s_1²). Loses half the digits of small singular
/// values; kept as an independent route for cross-checking matrix_abs.
ComplexMatrix matrix_abs_gram(const ComplexMatrix& a);

/// A = U·|A| with U = left·right* from the SVD; U = I when A = 0.
PolarFactors polar_decompose(const ComplexMatrix& a);

/// Schatten p-norm for p in [1, ∞]; pass std::numeric_limits<double>::infinity()
/// for the operator norm. Throws DomainError for p < 1 or NaN.
double schatten_norm(const ComplexMatrix& a, double p);
double schatten_norm(const std::vector<double>& singular_values, double p);

/// tr(S*·T).
Complex trace_inner(const ComplexMatrix& s, const ComplexMatrix& t);

/// s_1(Q) ≤ 1 + tol.
bool is_contraction(const ComplexMatrix& q, double tol);

/// X Hermitian within tol·(1+‖X‖_F) and λ_min(X) ≥ −tol·(1+s_1(X)).
bool is_psd(const ComplexMatrix& x, double tol);

}  // namespace absnorm

#pragma once

#include <vector>

#include "lqrdecay/matrix.hpp"

namespace lqrdecay {

/// Relative tolerance used everywhere a matrix is required to be Hermitian
/// (or skew-Hermitian) on input.
inline constexpr double kHermitianTol = 1e-9;

struct HermitianEig {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // orthonormal columns, same order
};

/// Eigen-decomposition of a Hermitian matrix by cyclic Jacobi rotations.
/// Guarantees orthonormal eigenvectors by construction; eigenvalues are
/// returned ascending. Throws PreconditionError for non-square or
/// non-Hermitian input, ConvergenceError after 100 sweeps.
HermitianEig hermitian_eig(const ComplexMatrix& h);

/// Thrown when the shifted QR iteration fails to deflate; carries the
/// partially reduced Hessenberg matrix for diagnosis.
class EigNonConvergence : public ConvergenceError {
 public:
  EigNonConvergence(const std::string& msg, ComplexMatrix partial)
      : ConvergenceError(msg), partial_(std::move(partial)) {}
  const ComplexMatrix& partial() const { return partial_; }

 private:
  ComplexMatrix partial_;
};

/// Eigenvalues of a general square complex matrix: Householder reduction to
/// Hessenberg form followed by shifted QR iteration with Wilkinson shifts.
std::vector<cxd> general_eig(const ComplexMatrix& m);

/// Solves M x = rhs (one column per right-hand side) by LU with partial
/// pivoting. Throws SingularMatrixError when a pivot falls below
/// 1e-14 * ||M||_F.
ComplexMatrix solve_linear(const ComplexMatrix& m, const ComplexMatrix& rhs);

ComplexMatrix inverse(const ComplexMatrix& m);

struct InverseWithLogDet {
  ComplexMatrix inv;
  double log_abs_det;
};

/// Inverse and log|det| from a single LU factorization. With strict_pivot
/// false, only an exactly zero pivot throws; the sign-function iteration
/// legitimately passes through nearly singular iterates and recovers.
InverseWithLogDet inverse_with_log_det(const ComplexMatrix& m,
                                       bool strict_pivot = true);

cxd determinant(const ComplexMatrix& m);

/// log|det M|, computed from LU pivots without overflow; -inf when singular.
double log_abs_determinant(const ComplexMatrix& m);

/// Singular values, descending; computed as square roots of the eigenvalues
/// of the smaller Gram matrix.
std::vector<double> singular_values(const ComplexMatrix& m);

inline double spectral_norm(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m).front();
}

double smallest_singular_value(const ComplexMatrix& m);

/// Spectral norm of a Hermitian matrix (largest |eigenvalue|).
double hermitian_norm(const ComplexMatrix& m);

/// Lower-triangular L with G = L L* and positive real diagonal.
ComplexMatrix cholesky(const ComplexMatrix& g);

/// Least-squares solution of the overdetermined system A x = rhs
/// (rows >= cols) via Householder QR. Never forms normal equations.
ComplexMatrix solve_least_squares(const ComplexMatrix& a,
                                  const ComplexMatrix& rhs);

}  // namespace lqrdecay

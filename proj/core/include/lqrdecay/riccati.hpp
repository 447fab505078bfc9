#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lqrdecay/linalg.hpp"
#include "lqrdecay/matrix.hpp"

namespace lqrdecay {

/// (A, B) is detected as not stabilizable (or the extracted closed loop is
/// unstable / the cost matrix fails to be positive definite).
class StabilizabilityError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// State-space LQR problem data. Q and R default to identities.
struct SystemSpec {
  ComplexMatrix A;  // n x n
  ComplexMatrix B;  // n x m, m <= n, trivial kernel
  ComplexMatrix Q;  // n x n Hermitian positive definite
  ComplexMatrix R;  // m x m Hermitian positive definite
  std::string label;
};

/// Validates shapes, Hermitian positive definiteness of the weights and the
/// kernel condition on B. Empty Q/R select the identity defaults.
SystemSpec make_system(ComplexMatrix a, ComplexMatrix b, ComplexMatrix q = {},
                       ComplexMatrix r = {}, std::string label = {});

struct CareSolution {
  ComplexMatrix X;     // Hermitian positive definite CARE solution
  ComplexMatrix F;     // feedback, F = R^{-1} B* X
  ComplexMatrix A_cl;  // A - B F
  std::vector<cxd> closed_loop_eigs;
  double residual = 0.0;
  std::size_t iterations = 0;

  double X_norm() const { return hermitian_norm(X); }
};

/// Solves X B R^{-1} B* X - X A - A* X - Q = 0 for the stabilizing X via the
/// matrix sign function of the Hamiltonian, using determinant-scaled Newton
/// inversion steps. X is extracted from sign(H) by a Householder QR
/// least-squares solve and re-Hermitized before the residual is measured.
CareSolution solve_care(const SystemSpec& sys);

/// Solves A_cl* W + W A_cl + C = 0 for stable A_cl and Hermitian PSD C
/// through the n^2 Kronecker linear system (capped at n = 64).
ComplexMatrix solve_lyapunov(const ComplexMatrix& a_cl,
                             const ComplexMatrix& c);

struct ShiftedLqrResult {
  ComplexMatrix F;     // feedback computed for the shifted pair (A + tau I, B)
  ComplexMatrix A_cl;  // A - B F for the *unshifted* A
  double gamma_decay = 0.0;
  double X_tau_norm = 0.0;   // cost of this feedback under the plain functional
  double X0_tau_norm = 0.0;  // state-only cost, C = I
  ComplexMatrix X_tau;
  ComplexMatrix X0_tau;
};

/// Prescribed-decay stabilization: solve the LQR for (A + tau I, B) and apply
/// the resulting feedback to the unshifted system. The returned norms measure
/// how the quadratic cost blows up with the shift.
ShiftedLqrResult shifted_lqr(const SystemSpec& sys, double tau);

/// x0* X x0 for Hermitian PSD X.
double optimal_cost(const ComplexMatrix& x, const std::vector<cxd>& x0);

}  // namespace lqrdecay

#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "lqrdecay/matrix.hpp"

namespace lqrdecay {

/// Eigenstructure of a skew-Hermitian system matrix plus the derived
/// separation quantities every decay-rate bound is built from.
///
/// Eigenvalues of A are i*lambda_j with lambda_1 <= ... <= lambda_n.
/// Gaps at or below the coincidence threshold 1e-8 * max(1, Delta) are
/// treated as exact zeros; a single eigenvalue (n = 1) gets the
/// delta = +infinity convention.
struct SpectralData {
  std::size_t n = 0;
  std::size_t m = 0;
  std::vector<double> lambdas;               // ascending
  ComplexMatrix V;                           // orthonormal columns; empty when
                                             // built from closed forms
  std::vector<std::vector<cxd>> b_vectors;   // b_j = B* v_j
  std::vector<double> b_norms;
  double B_norm = 0.0;       // spectral norm of B
  double B_frobenius = 0.0;
  std::vector<double> sigma;  // singular values of B, descending
  double delta = 0.0;         // minimal eigenvalue separation
  std::vector<double> delta_k;
  double Delta = 0.0;  // spectral diameter lambda_n - lambda_1
  std::vector<double> Delta_table;  // Delta_k for k = 1..n-1

  double sigma_min() const { return sigma.empty() ? 0.0 : sigma.back(); }
  /// Delta_m for index distance k (1-based); infinity when out of range.
  double Delta_at(std::size_t k) const;
};

/// Fills delta, delta_k, Delta and Delta_table from the sorted lambdas,
/// applying the coincidence threshold. Exposed for the closed-form path.
void finalize_separations(SpectralData& data);

/// Diagonalizes a skew-Hermitian A (via the Hermitian matrix -iA) and
/// collects the control vectors b_j = B* v_j. Eigenvector phases are fixed by
/// making the largest-magnitude component real positive.
///
/// With allow_non_skew the skew-Hermitian gate is bypassed: eigenvalues come
/// from the general solver, eigenvectors from inverse iteration, and V is not
/// unitary. Intended only for the counterexample demonstrations.
SpectralData decompose(const ComplexMatrix& a, const ComplexMatrix& b,
                       bool allow_non_skew = false);

/// min |Re nu| over a closed-loop spectrum.
double gamma_decay(const std::vector<cxd>& closed_loop_eigs);

/// Phi(z) = I - sum_j (z - i lambda_j)^{-2} b_j b_j*; the stable zeros of
/// this rational matrix function are the closed-loop eigenvalues.
ComplexMatrix phi(cxd z, const SpectralData& data);

/// Controllability measure d_0 = min_k ||b_k||.
double d0(const SpectralData& data);

struct DucBounds {
  bool applicable = false;  // requires m < n
  double upper = 0.0;       // min(d_0, Delta_m / 2)
  /// Lower decay-rate bound for m = 1, computed from the *upper bound* as a
  /// surrogate for the true distance to uncontrollability; a bound on a
  /// bound, reported as such.
  std::optional<double> gamma_lower_m1;
};

/// Upper bound for Eising's distance to uncontrollability and the m = 1
/// decay-rate relation derived from it.
DucBounds duc_bounds(const SpectralData& data);

}  // namespace lqrdecay

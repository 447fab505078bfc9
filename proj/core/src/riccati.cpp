#include "lqrdecay/riccati.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace lqrdecay {

namespace {

constexpr int kSignMaxIterations = 100;
constexpr double kSignRelTol = 1e-13;
// Roundoff plateau acceptance: the Newton correction has stopped shrinking
// but is already far below any meaningful scale.
constexpr double kSignPlateauGate = 1e-4;
constexpr std::size_t kLyapunovMaxDim = 64;

void check_hermitian_pd(const ComplexMatrix& m, const char* name) {
  if (m.hermitian_defect() > kHermitianTol * (1.0 + m.frobenius_norm())) {
    throw PreconditionError(std::string("make_system: ") + name +
                            " is not Hermitian");
  }
  const HermitianEig eig = hermitian_eig(m);
  if (eig.eigenvalues.front() <= 0.0) {
    throw PreconditionError(std::string("make_system: ") + name +
                            " is not positive definite (min eigenvalue " +
                            std::to_string(eig.eigenvalues.front()) + ")");
  }
}

double max_real_part(const std::vector<cxd>& eigs) {
  double m = -std::numeric_limits<double>::infinity();
  for (const cxd& e : eigs) m = std::max(m, e.real());
  return m;
}

}  // namespace

SystemSpec make_system(ComplexMatrix a, ComplexMatrix b, ComplexMatrix q,
                       ComplexMatrix r, std::string label) {
  a.require_square("make_system: A");
  const std::size_t n = a.rows();
  const std::size_t m = b.cols();
  if (b.rows() != n) {
    throw PreconditionError("make_system: B row count differs from A");
  }
  if (m == 0 || m > n) {
    throw PreconditionError("make_system: control count must satisfy 1 <= m <= n");
  }
  if (!a.all_finite() || !b.all_finite()) {
    throw PreconditionError("make_system: non-finite entry in A or B");
  }
  const auto sv = singular_values(b);
  if (sv.back() <= 1e-12 * sv.front()) {
    throw PreconditionError("make_system: B has (numerically) nontrivial kernel");
  }
  if (q.size() == 0) q = ComplexMatrix::identity(n);
  if (r.size() == 0) r = ComplexMatrix::identity(m);
  if (q.rows() != n || q.cols() != n) {
    throw PreconditionError("make_system: Q must be n x n");
  }
  if (r.rows() != m || r.cols() != m) {
    throw PreconditionError("make_system: R must be m x m");
  }
  check_hermitian_pd(q, "Q");
  check_hermitian_pd(r, "R");
  return SystemSpec{std::move(a), std::move(b), std::move(q), std::move(r),
                    std::move(label)};
}

CareSolution solve_care(const SystemSpec& sys) {
  const std::size_t n = sys.A.rows();
  const std::size_t nn = 2 * n;

  const ComplexMatrix rinv_badj = solve_linear(sys.R, sys.B.adjoint());
  const ComplexMatrix g = sys.B * rinv_badj;  // B R^{-1} B*

  ComplexMatrix ham(nn, nn);
  ham.set_block(0, 0, sys.A);
  ham.set_block(0, n, -g);
  ham.set_block(n, 0, -sys.Q);
  ham.set_block(n, n, -sys.A.adjoint());

  ComplexMatrix z = ham;
  double prev_change = std::numeric_limits<double>::infinity();
  bool converged = false;
  std::size_t iterations = 0;

  for (int it = 0; it < kSignMaxIterations; ++it) {
    InverseWithLogDet inv;
    try {
      // Relaxed pivots: spectra hugging the imaginary axis send sign
      // iterates close to singular mid-flight; the iteration recovers and
      // the CARE residual gate below still decides correctness.
      inv = inverse_with_log_det(z, /*strict_pivot=*/false);
    } catch (const SingularMatrixError& e) {
      throw ConvergenceError(
          std::string("solve_care: sign iterate is singular; the pair is "
                      "likely not stabilizable (") +
          e.what() + ")");
    }
    const double c = std::exp(-inv.log_abs_det / static_cast<double>(nn));
    ComplexMatrix znew = z;
    znew *= cxd{0.5 * c, 0.0};
    ComplexMatrix scaled_inv = std::move(inv.inv);
    scaled_inv *= cxd{0.5 / c, 0.0};
    znew += scaled_inv;

    const double change = (znew - z).frobenius_norm();
    const double scale = z.frobenius_norm();
    z = std::move(znew);
    iterations = static_cast<std::size_t>(it + 1);
    if (change <= kSignRelTol * scale) {
      converged = true;
      break;
    }
    if (it >= 3 && change <= kSignPlateauGate * scale &&
        change >= 0.5 * prev_change) {
      converged = true;  // Newton correction hit the roundoff floor
      break;
    }
    prev_change = change;
  }
  if (!converged) {
    throw ConvergenceError("solve_care: sign iteration did not converge in " +
                           std::to_string(kSignMaxIterations) + " steps");
  }

  const ComplexMatrix s11 = z.block(0, 0, n, n);
  const ComplexMatrix s12 = z.block(0, n, n, n);
  const ComplexMatrix s21 = z.block(n, 0, n, n);
  const ComplexMatrix s22 = z.block(n, n, n, n);
  const ComplexMatrix eye = ComplexMatrix::identity(n);

  ComplexMatrix lhs(nn, n);
  lhs.set_block(0, 0, s12);
  lhs.set_block(n, 0, s22 + eye);
  ComplexMatrix rhs(nn, n);
  rhs.set_block(0, 0, -(s11 + eye));
  rhs.set_block(n, 0, -s21);

  ComplexMatrix x = solve_least_squares(lhs, rhs);
  x = 0.5 * (x + x.adjoint());

  CareSolution sol;
  sol.residual = (x * g * x - x * sys.A - sys.A.adjoint() * x - sys.Q)
                     .frobenius_norm();
  sol.X = std::move(x);
  sol.F = rinv_badj * sol.X;
  sol.A_cl = sys.A - sys.B * sol.F;
  sol.closed_loop_eigs = general_eig(sol.A_cl);
  sol.iterations = iterations;

  if (max_real_part(sol.closed_loop_eigs) >= 0.0) {
    throw StabilizabilityError(
        "solve_care: extracted closed loop is not stable (max Re = " +
        std::to_string(max_real_part(sol.closed_loop_eigs)) + ")");
  }
  const HermitianEig xeig = hermitian_eig(sol.X);
  if (xeig.eigenvalues.front() <= 0.0) {
    throw StabilizabilityError(
        "solve_care: cost matrix X is not positive definite");
  }
  const double residual_bound =
      1e-8 * (sys.Q.frobenius_norm() +
              sol.X.frobenius_norm() * sys.A.frobenius_norm());
  if (sol.residual > residual_bound) {
    throw ConvergenceError("solve_care: residual " +
                           std::to_string(sol.residual) +
                           " exceeds tolerance " +
                           std::to_string(residual_bound));
  }
  return sol;
}

ComplexMatrix solve_lyapunov(const ComplexMatrix& a_cl,
                             const ComplexMatrix& c) {
  a_cl.require_square("solve_lyapunov: A_cl");
  c.require_square("solve_lyapunov: C");
  const std::size_t n = a_cl.rows();
  if (c.rows() != n) {
    throw PreconditionError("solve_lyapunov: dimension mismatch");
  }
  if (n > kLyapunovMaxDim) {
    throw PreconditionError(
        "solve_lyapunov: dimension above the n = " +
        std::to_string(kLyapunovMaxDim) + " Kronecker-solve cap");
  }
  if (c.hermitian_defect() > kHermitianTol * (1.0 + c.frobenius_norm())) {
    throw PreconditionError("solve_lyapunov: C is not Hermitian");
  }
  if (max_real_part(general_eig(a_cl)) >= 0.0) {
    throw PreconditionError("solve_lyapunov: A_cl is not stable");
  }

  // vec(A_cl* W + W A_cl) = (I (x) A_cl* + A_cl^T (x) I) vec(W), column-major.
  const ComplexMatrix m_left = a_cl.adjoint();
  ComplexMatrix kron(n * n, n * n);
  for (std::size_t jblock = 0; jblock < n; ++jblock) {
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k)
        kron(jblock * n + i, jblock * n + k) += m_left(i, k);
  }
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        kron(j * n + i, k * n + i) += a_cl(k, j);

  ComplexMatrix rhs(n * n, 1);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) rhs(j * n + i, 0) = -c(i, j);

  const ComplexMatrix wvec = solve_linear(kron, rhs);
  ComplexMatrix w(n, n);
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i) w(i, j) = wvec(j * n + i, 0);
  w = 0.5 * (w + w.adjoint());

  // Backward-error scale: for badly scaled A_cl (e.g. heavily shifted
  // feedback) the attainable absolute residual is eps * ||A_cl|| ||W||, so
  // the tolerance has to grow with the data.
  const double res =
      (a_cl.adjoint() * w + w * a_cl + c).frobenius_norm();
  const double scale = 1.0 + c.frobenius_norm() +
                       2.0 * a_cl.frobenius_norm() * w.frobenius_norm();
  if (res > 1e-9 * scale) {
    throw ConvergenceError("solve_lyapunov: residual " + std::to_string(res) +
                           " above tolerance");
  }
  return w;
}

ShiftedLqrResult shifted_lqr(const SystemSpec& sys, double tau) {
  if (tau < 0.0 || !std::isfinite(tau)) {
    throw PreconditionError("shifted_lqr: shift must be nonnegative");
  }
  const std::size_t n = sys.A.rows();
  ComplexMatrix shifted_a = sys.A;
  for (std::size_t i = 0; i < n; ++i) shifted_a(i, i) += tau;

  SystemSpec shifted = sys;
  shifted.A = std::move(shifted_a);
  const CareSolution care = solve_care(shifted);

  ShiftedLqrResult out;
  out.F = care.F;
  out.A_cl = sys.A - sys.B * care.F;
  const std::vector<cxd> eigs = general_eig(out.A_cl);
  double gamma = std::numeric_limits<double>::infinity();
  for (const cxd& e : eigs) gamma = std::min(gamma, std::abs(e.real()));
  if (max_real_part(eigs) >= 0.0) {
    throw StabilizabilityError("shifted_lqr: closed loop is not stable");
  }
  out.gamma_decay = gamma;

  const ComplexMatrix cost_term =
      sys.Q + out.F.adjoint() * (sys.R * out.F);
  out.X_tau = solve_lyapunov(out.A_cl, cost_term);
  out.X0_tau = solve_lyapunov(out.A_cl, ComplexMatrix::identity(n));
  out.X_tau_norm = hermitian_norm(out.X_tau);
  out.X0_tau_norm = hermitian_norm(out.X0_tau);
  return out;
}

double optimal_cost(const ComplexMatrix& x, const std::vector<cxd>& x0) {
  x.require_square("optimal_cost");
  if (x.rows() != x0.size()) {
    throw PreconditionError("optimal_cost: dimension mismatch");
  }
  if (x.hermitian_defect() > kHermitianTol * (1.0 + x.frobenius_norm())) {
    throw PreconditionError("optimal_cost: X is not Hermitian");
  }
  return vector_dot(x0, x * x0).real();
}

}  // namespace lqrdecay

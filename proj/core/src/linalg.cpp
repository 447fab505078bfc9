#include "lqrdecay/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

namespace lqrdecay {

namespace {

constexpr int kJacobiMaxSweeps = 100;
constexpr double kJacobiOffTol = 1e-14;
constexpr double kQrDeflationTol = 1e-14;
constexpr double kPivotTol = 1e-14;

double offdiagonal_norm(const ComplexMatrix& h) {
  double acc = 0.0;
  for (std::size_t p = 0; p < h.rows(); ++p)
    for (std::size_t q = 0; q < h.cols(); ++q)
      if (p != q) acc += std::norm(h(p, q));
  return std::sqrt(acc);
}

struct LuFactors {
  ComplexMatrix lu;
  std::vector<std::size_t> perm;
  int parity = 1;
  double source_norm = 0.0;
  double min_pivot = std::numeric_limits<double>::infinity();
};

LuFactors lu_factor(const ComplexMatrix& m) {
  m.require_square("lu_factor");
  const std::size_t n = m.rows();
  LuFactors f{m, std::vector<std::size_t>(n), 1, m.frobenius_norm()};
  std::iota(f.perm.begin(), f.perm.end(), std::size_t{0});

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    double best = std::abs(f.lu(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      const double cand = std::abs(f.lu(i, k));
      if (cand > best) {
        best = cand;
        piv = i;
      }
    }
    if (piv != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(f.lu(k, j), f.lu(piv, j));
      std::swap(f.perm[k], f.perm[piv]);
      f.parity = -f.parity;
    }
    f.min_pivot = std::min(f.min_pivot, best);
    if (best == 0.0) continue;  // singular; leave the zero column as-is
    const cxd pivot = f.lu(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      const cxd l = f.lu(i, k) / pivot;
      f.lu(i, k) = l;
      if (l == cxd{0.0, 0.0}) continue;
      for (std::size_t j = k + 1; j < n; ++j) f.lu(i, j) -= l * f.lu(k, j);
    }
  }
  return f;
}

ComplexMatrix lu_solve(const LuFactors& f, const ComplexMatrix& rhs,
                       double pivot_tol = kPivotTol) {
  const std::size_t n = f.lu.rows();
  if (rhs.rows() != n) {
    throw PreconditionError("solve_linear: right-hand side row mismatch");
  }
  if (f.min_pivot <= pivot_tol * f.source_norm || f.min_pivot == 0.0) {
    throw SingularMatrixError(
        "solve_linear: matrix numerically singular (pivot " +
        std::to_string(f.min_pivot) + ")");
  }
  const std::size_t nrhs = rhs.cols();
  ComplexMatrix x(n, nrhs);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < nrhs; ++j) x(i, j) = rhs(f.perm[i], j);
  // forward substitution, unit lower triangle
  for (std::size_t i = 1; i < n; ++i)
    for (std::size_t k = 0; k < i; ++k) {
      const cxd l = f.lu(i, k);
      if (l == cxd{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < nrhs; ++j) x(i, j) -= l * x(k, j);
    }
  // back substitution
  for (std::size_t ii = n; ii-- > 0;) {
    const cxd d = f.lu(ii, ii);
    for (std::size_t j = 0; j < nrhs; ++j) x(ii, j) /= d;
    for (std::size_t k = 0; k < ii; ++k) {
      const cxd u = f.lu(k, ii);
      if (u == cxd{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < nrhs; ++j) x(k, j) -= u * x(ii, j);
    }
  }
  return x;
}

// Unitary plane rotation zeroing b in (a, b)^T.
struct Givens {
  cxd a{1.0, 0.0};
  cxd b{0.0, 0.0};
  double r = 1.0;
  bool trivial = true;
};

Givens make_givens(cxd a, cxd b) {
  Givens g;
  const double r = std::hypot(std::abs(a), std::abs(b));
  if (r == 0.0 || std::abs(b) == 0.0) {
    g.trivial = true;
    return g;
  }
  g.a = a;
  g.b = b;
  g.r = r;
  g.trivial = false;
  return g;
}

}  // namespace

HermitianEig hermitian_eig(const ComplexMatrix& h_in) {
  h_in.require_square("hermitian_eig");
  const std::size_t n = h_in.rows();
  const double norm = h_in.frobenius_norm();
  if (h_in.hermitian_defect() > kHermitianTol * (1.0 + norm)) {
    throw PreconditionError("hermitian_eig: matrix is not Hermitian (defect " +
                            std::to_string(h_in.hermitian_defect()) + ")");
  }

  // Symmetrize so the iteration sees an exactly Hermitian matrix.
  ComplexMatrix h(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      h(i, j) = 0.5 * (h_in(i, j) + std::conj(h_in(j, i)));

  ComplexMatrix v = ComplexMatrix::identity(n);
  const double off_tol = kJacobiOffTol * std::max(norm, 1e-300);

  for (int sweep = 0; sweep < kJacobiMaxSweeps; ++sweep) {
    double largest = 0.0;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const cxd g = h(p, q);
        const double ag = std::abs(g);
        largest = std::max(largest, ag);
        if (ag <= off_tol) continue;

        const double alpha = h(p, p).real();
        const double beta = h(q, q).real();
        const cxd phase = g / ag;
        const double tau = (alpha - beta) / (2.0 * ag);
        // smaller-magnitude root of t^2 - 2 tau t - 1 = 0
        double t;
        if (tau >= 0.0) {
          t = -1.0 / (tau + std::sqrt(1.0 + tau * tau));
        } else {
          t = 1.0 / (-tau + std::sqrt(1.0 + tau * tau));
        }
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const cxd u = phase * s;  // rotation [[c, u], [-conj(u), c]]

        for (std::size_t k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const cxd hkp = h(k, p);
          const cxd hkq = h(k, q);
          const cxd nkp = c * hkp - std::conj(u) * hkq;
          const cxd nkq = u * hkp + c * hkq;
          h(k, p) = nkp;
          h(k, q) = nkq;
          h(p, k) = std::conj(nkp);
          h(q, k) = std::conj(nkq);
        }
        h(p, p) = alpha * c * c - 2.0 * ag * c * s + beta * s * s;
        h(q, q) = alpha * s * s + 2.0 * ag * c * s + beta * c * c;
        h(p, q) = 0.0;
        h(q, p) = 0.0;

        for (std::size_t k = 0; k < n; ++k) {
          const cxd vkp = v(k, p);
          const cxd vkq = v(k, q);
          v(k, p) = c * vkp - std::conj(u) * vkq;
          v(k, q) = u * vkp + c * vkq;
        }
      }
    }
    if (largest <= off_tol) break;
    if (sweep == kJacobiMaxSweeps - 1 && offdiagonal_norm(h) > off_tol * n) {
      throw ConvergenceError("hermitian_eig: Jacobi did not converge in " +
                             std::to_string(kJacobiMaxSweeps) + " sweeps");
    }
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return h(a, a).real() < h(b, b).real();
  });

  HermitianEig out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = h(order[j], order[j]).real();
    for (std::size_t i = 0; i < n; ++i)
      out.eigenvectors(i, j) = v(i, order[j]);
  }
  return out;
}

namespace {

void hessenberg_reduce(ComplexMatrix& h) {
  const std::size_t n = h.rows();
  if (n < 3) return;
  std::vector<cxd> vvec(n), w(n);
  for (std::size_t k = 0; k + 2 < n; ++k) {
    double sigma = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) sigma += std::norm(h(i, k));
    sigma = std::sqrt(sigma);
    if (sigma == 0.0) continue;
    const cxd alpha = h(k + 1, k);
    const cxd phase =
        std::abs(alpha) > 0.0 ? alpha / std::abs(alpha) : cxd{1.0, 0.0};
    double vnorm2 = 0.0;
    for (std::size_t i = k + 1; i < n; ++i) {
      vvec[i] = h(i, k);
      if (i == k + 1) vvec[i] += phase * sigma;
      vnorm2 += std::norm(vvec[i]);
    }
    if (vnorm2 == 0.0) continue;
    const double betaf = 2.0 / vnorm2;

    // left: rows k+1..n-1
    for (std::size_t j = k; j < n; ++j) {
      cxd acc = 0.0;
      for (std::size_t i = k + 1; i < n; ++i) acc += std::conj(vvec[i]) * h(i, j);
      acc *= betaf;
      for (std::size_t i = k + 1; i < n; ++i) h(i, j) -= vvec[i] * acc;
    }
    // right: columns k+1..n-1
    for (std::size_t i = 0; i < n; ++i) {
      cxd acc = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) acc += h(i, j) * vvec[j];
      acc *= betaf;
      for (std::size_t j = k + 1; j < n; ++j) h(i, j) -= acc * std::conj(vvec[j]);
    }
    for (std::size_t i = k + 2; i < n; ++i) h(i, k) = 0.0;
  }
}

cxd wilkinson_shift(const ComplexMatrix& h, std::size_t hi) {
  const cxd a = h(hi - 1, hi - 1);
  const cxd b = h(hi - 1, hi);
  const cxd c = h(hi, hi - 1);
  const cxd d = h(hi, hi);
  const cxd tr = a + d;
  const cxd det = a * d - b * c;
  const cxd disc = std::sqrt(tr * tr - 4.0 * det);
  const cxd r1 = 0.5 * (tr + disc);
  const cxd r2 = 0.5 * (tr - disc);
  return std::abs(r1 - d) < std::abs(r2 - d) ? r1 : r2;
}

}  // namespace

std::vector<cxd> general_eig(const ComplexMatrix& m) {
  m.require_square("general_eig");
  if (!m.all_finite()) {
    throw PreconditionError("general_eig: non-finite entry");
  }
  const std::size_t n = m.rows();
  if (n == 0) throw PreconditionError("general_eig: empty matrix");
  if (n == 1) return {m(0, 0)};

  ComplexMatrix h = m;
  hessenberg_reduce(h);

  const std::size_t max_iters = 100 * n;
  std::size_t iters = 0;
  std::size_t hi = n - 1;
  std::size_t stalled = 0;

  auto negligible = [&](std::size_t k) {
    return std::abs(h(k, k - 1)) <=
           kQrDeflationTol * (std::abs(h(k - 1, k - 1)) + std::abs(h(k, k)));
  };

  while (hi > 0) {
    if (negligible(hi)) {
      h(hi, hi - 1) = 0.0;
      --hi;
      stalled = 0;
      continue;
    }
    std::size_t lo = hi;
    while (lo > 0 && !negligible(lo)) --lo;
    if (lo > 0) h(lo, lo - 1) = 0.0;

    if (++iters > max_iters) {
      throw EigNonConvergence(
          "general_eig: QR iteration exceeded " + std::to_string(max_iters) +
              " steps",
          h);
    }

    cxd mu;
    ++stalled;
    if (stalled % 20 == 0) {
      // exceptional shift to break rare symmetric stalls
      mu = h(hi, hi) + cxd{0.75 * std::abs(h(hi, hi - 1)), 0.0};
    } else {
      mu = wilkinson_shift(h, hi);
    }

    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= mu;

    std::vector<Givens> rots(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
      Givens g = make_givens(h(k, k), h(k + 1, k));
      rots[k - lo] = g;
      if (g.trivial) continue;
      const cxd ca = std::conj(g.a) / g.r;
      const cxd cb = std::conj(g.b) / g.r;
      for (std::size_t j = k; j <= hi; ++j) {
        const cxd x = h(k, j);
        const cxd y = h(k + 1, j);
        h(k, j) = ca * x + cb * y;
        h(k + 1, j) = (-g.b * x + g.a * y) / g.r;
      }
    }
    for (std::size_t k = lo; k < hi; ++k) {
      const Givens& g = rots[k - lo];
      if (g.trivial) continue;
      const std::size_t top = std::min(k + 1, hi);
      for (std::size_t i = lo; i <= top; ++i) {
        const cxd x = h(i, k);
        const cxd y = h(i, k + 1);
        h(i, k) = (x * g.a + y * g.b) / g.r;
        h(i, k + 1) = (-x * std::conj(g.b) + y * std::conj(g.a)) / g.r;
      }
    }
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += mu;
  }

  std::vector<cxd> eigs(n);
  for (std::size_t i = 0; i < n; ++i) eigs[i] = h(i, i);
  return eigs;
}

ComplexMatrix solve_linear(const ComplexMatrix& m, const ComplexMatrix& rhs) {
  return lu_solve(lu_factor(m), rhs);
}

ComplexMatrix inverse(const ComplexMatrix& m) {
  return solve_linear(m, ComplexMatrix::identity(m.rows()));
}

InverseWithLogDet inverse_with_log_det(const ComplexMatrix& m,
                                       bool strict_pivot) {
  const LuFactors f = lu_factor(m);
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double p = std::abs(f.lu(i, i));
    acc += p == 0.0 ? -std::numeric_limits<double>::infinity() : std::log(p);
  }
  const double tol = strict_pivot ? kPivotTol : 0.0;
  return {lu_solve(f, ComplexMatrix::identity(m.rows()), tol), acc};
}

cxd determinant(const ComplexMatrix& m) {
  const LuFactors f = lu_factor(m);
  cxd det{static_cast<double>(f.parity), 0.0};
  for (std::size_t i = 0; i < m.rows(); ++i) det *= f.lu(i, i);
  return det;
}

double log_abs_determinant(const ComplexMatrix& m) {
  const LuFactors f = lu_factor(m);
  double acc = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    const double p = std::abs(f.lu(i, i));
    if (p == 0.0) return -std::numeric_limits<double>::infinity();
    acc += std::log(p);
  }
  return acc;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
  if (m.size() == 0) return {};
  const ComplexMatrix gram =
      m.rows() >= m.cols() ? m.adjoint() * m : m * m.adjoint();
  HermitianEig eig = hermitian_eig(gram);
  std::vector<double> sv(eig.eigenvalues.size());
  for (std::size_t i = 0; i < sv.size(); ++i) {
    sv[i] = std::sqrt(std::max(0.0, eig.eigenvalues[sv.size() - 1 - i]));
  }
  return sv;
}

double smallest_singular_value(const ComplexMatrix& m) {
  const auto sv = singular_values(m);
  return sv.empty() ? 0.0 : sv.back();
}

double hermitian_norm(const ComplexMatrix& m) {
  const HermitianEig eig = hermitian_eig(m);
  if (eig.eigenvalues.empty()) return 0.0;
  return std::max(std::abs(eig.eigenvalues.front()),
                  std::abs(eig.eigenvalues.back()));
}

ComplexMatrix cholesky(const ComplexMatrix& g) {
  g.require_square("cholesky");
  const std::size_t n = g.rows();
  if (g.hermitian_defect() > kHermitianTol * (1.0 + g.frobenius_norm())) {
    throw PreconditionError("cholesky: matrix is not Hermitian");
  }
  ComplexMatrix l(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    double diag = g(j, j).real();
    for (std::size_t k = 0; k < j; ++k) diag -= std::norm(l(j, k));
    if (diag <= 0.0 || !std::isfinite(diag)) {
      throw NotPositiveDefiniteError(
          "cholesky: non-positive pivot at index " + std::to_string(j));
    }
    l(j, j) = std::sqrt(diag);
    for (std::size_t i = j + 1; i < n; ++i) {
      cxd acc = g(i, j);
      for (std::size_t k = 0; k < j; ++k)
        acc -= l(i, k) * std::conj(l(j, k));
      l(i, j) = acc / l(j, j).real();
    }
  }
  return l;
}

ComplexMatrix solve_least_squares(const ComplexMatrix& a,
                                  const ComplexMatrix& rhs) {
  const std::size_t p = a.rows();
  const std::size_t q = a.cols();
  if (p < q) {
    throw PreconditionError("solve_least_squares: system is underdetermined");
  }
  if (rhs.rows() != p) {
    throw PreconditionError("solve_least_squares: right-hand side mismatch");
  }
  ComplexMatrix r = a;
  ComplexMatrix b = rhs;
  std::vector<cxd> v(p);

  for (std::size_t k = 0; k < q; ++k) {
    double sigma = 0.0;
    for (std::size_t i = k; i < p; ++i) sigma += std::norm(r(i, k));
    sigma = std::sqrt(sigma);
    if (sigma == 0.0) {
      throw SingularMatrixError("solve_least_squares: rank-deficient column " +
                                std::to_string(k));
    }
    const cxd alpha = r(k, k);
    const cxd phase =
        std::abs(alpha) > 0.0 ? alpha / std::abs(alpha) : cxd{1.0, 0.0};
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < p; ++i) {
      v[i] = r(i, k);
      if (i == k) v[i] += phase * sigma;
      vnorm2 += std::norm(v[i]);
    }
    const double betaf = 2.0 / vnorm2;
    for (std::size_t j = k; j < q; ++j) {
      cxd acc = 0.0;
      for (std::size_t i = k; i < p; ++i) acc += std::conj(v[i]) * r(i, j);
      acc *= betaf;
      for (std::size_t i = k; i < p; ++i) r(i, j) -= v[i] * acc;
    }
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cxd acc = 0.0;
      for (std::size_t i = k; i < p; ++i) acc += std::conj(v[i]) * b(i, j);
      acc *= betaf;
      for (std::size_t i = k; i < p; ++i) b(i, j) -= v[i] * acc;
    }
  }

  ComplexMatrix x(q, b.cols());
  for (std::size_t ii = q; ii-- > 0;) {
    for (std::size_t j = 0; j < b.cols(); ++j) {
      cxd acc = b(ii, j);
      for (std::size_t k = ii + 1; k < q; ++k) acc -= r(ii, k) * x(k, j);
      x(ii, j) = acc / r(ii, ii);
    }
  }
  return x;
}

}  // namespace lqrdecay

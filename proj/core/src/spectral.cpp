#include "lqrdecay/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "lqrdecay/linalg.hpp"

namespace lqrdecay {

namespace {

constexpr double kCoincidenceTol = 1e-8;

void fix_column_phases(ComplexMatrix& v) {
  for (std::size_t j = 0; j < v.cols(); ++j) {
    std::size_t imax = 0;
    double best = 0.0;
    for (std::size_t i = 0; i < v.rows(); ++i) {
      const double a = std::abs(v(i, j));
      if (a > best) {
        best = a;
        imax = i;
      }
    }
    if (best == 0.0) continue;
    const cxd rot = std::conj(v(imax, j)) / best;
    for (std::size_t i = 0; i < v.rows(); ++i) v(i, j) *= rot;
  }
}

// One eigenvector of a general matrix by shifted inverse iteration; only
// used on the non-skew demonstration path.
std::vector<cxd> inverse_iteration_vector(const ComplexMatrix& a, cxd nu) {
  const std::size_t n = a.rows();
  const double scale = 1.0 + a.frobenius_norm();
  ComplexMatrix shifted = a;
  const cxd eps{1e-10 * scale, 1e-10 * scale};
  for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= nu + eps;

  std::vector<cxd> x(n);
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = cxd{1.0 + 0.1 * static_cast<double>(i % 7),
               0.05 * static_cast<double>(i % 3)};
  }
  for (int pass = 0; pass < 4; ++pass) {
    ComplexMatrix rhs = ComplexMatrix::column(x);
    ComplexMatrix y;
    try {
      y = solve_linear(shifted, rhs);
    } catch (const SingularMatrixError&) {
      for (std::size_t i = 0; i < n; ++i) shifted(i, i) -= eps;
      y = solve_linear(shifted, rhs);
    }
    x = y.col_vector(0);
    const double nrm = vector_norm(x);
    for (auto& v : x) v /= nrm;
  }
  return x;
}

}  // namespace

double SpectralData::Delta_at(std::size_t k) const {
  if (k == 0 || k >= n) return std::numeric_limits<double>::infinity();
  return Delta_table[k - 1];
}

void finalize_separations(SpectralData& data) {
  const std::size_t n = data.lambdas.size();
  data.n = n;
  data.delta_k.assign(n, std::numeric_limits<double>::infinity());
  data.Delta_table.clear();
  data.Delta = 0.0;
  if (n == 0) return;
  if (n == 1) {
    // single eigenvalue: delta_1 = +infinity convention
    data.delta = std::numeric_limits<double>::infinity();
    return;
  }
  const double raw_diameter = data.lambdas.back() - data.lambdas.front();
  const double coincidence = kCoincidenceTol * std::max(1.0, raw_diameter);
  const auto snap = [coincidence](double gap) {
    return gap <= coincidence ? 0.0 : gap;
  };
  for (std::size_t k = 0; k < n; ++k) {
    double gap = std::numeric_limits<double>::infinity();
    if (k > 0) gap = std::min(gap, data.lambdas[k] - data.lambdas[k - 1]);
    if (k + 1 < n) gap = std::min(gap, data.lambdas[k + 1] - data.lambdas[k]);
    data.delta_k[k] = snap(gap);
  }
  data.Delta_table.resize(n - 1);
  for (std::size_t k = 1; k < n; ++k) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j + k < n; ++j)
      best = std::min(best, data.lambdas[j + k] - data.lambdas[j]);
    data.Delta_table[k - 1] = snap(best);
  }
  // delta = Delta_1 and Delta = Delta_{n-1} hold by construction
  data.delta = data.Delta_table.front();
  data.Delta = data.Delta_table.back();
}

SpectralData decompose(const ComplexMatrix& a, const ComplexMatrix& b,
                       bool allow_non_skew) {
  a.require_square("decompose: A");
  const std::size_t n = a.rows();
  if (b.rows() != n) {
    throw PreconditionError("decompose: B row count differs from A");
  }
  const double defect = a.skew_hermitian_defect();
  const double gate = 1e-9 * (1.0 + a.frobenius_norm());
  const bool skew = defect <= gate;
  if (!skew && !allow_non_skew) {
    throw PreconditionError(
        "decompose: A is not skew-Hermitian (defect " +
        std::to_string(defect) + ", tolerance " + std::to_string(gate) + ")");
  }

  SpectralData data;
  data.n = n;
  data.m = b.cols();

  if (skew) {
    // A = i H with H Hermitian; eigenvalues of H are the lambda_j.
    const HermitianEig eig = hermitian_eig(a * cxd{0.0, -1.0});
    data.lambdas = eig.eigenvalues;
    data.V = eig.eigenvectors;
  } else {
    std::vector<cxd> nus = general_eig(a);
    std::sort(nus.begin(), nus.end(), [](cxd x, cxd y) {
      if (x.imag() != y.imag()) return x.imag() < y.imag();
      return x.real() < y.real();
    });
    data.lambdas.resize(n);
    data.V = ComplexMatrix(n, n);
    for (std::size_t j = 0; j < n; ++j) {
      data.lambdas[j] = nus[j].imag();
      const std::vector<cxd> v = inverse_iteration_vector(a, nus[j]);
      for (std::size_t i = 0; i < n; ++i) data.V(i, j) = v[i];
    }
  }
  fix_column_phases(data.V);

  const ComplexMatrix badj = b.adjoint();
  data.b_vectors.resize(n);
  data.b_norms.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    data.b_vectors[j] = badj * data.V.col_vector(j);
    data.b_norms[j] = vector_norm(data.b_vectors[j]);
  }
  data.sigma = singular_values(b);
  data.B_norm = data.sigma.empty() ? 0.0 : data.sigma.front();
  data.B_frobenius = b.frobenius_norm();
  finalize_separations(data);
  return data;
}

double gamma_decay(const std::vector<cxd>& closed_loop_eigs) {
  if (closed_loop_eigs.empty()) {
    throw PreconditionError("gamma_decay: empty eigenvalue list");
  }
  double g = std::numeric_limits<double>::infinity();
  for (const cxd& e : closed_loop_eigs) g = std::min(g, std::abs(e.real()));
  return g;
}

ComplexMatrix phi(cxd z, const SpectralData& data) {
  const std::size_t m = data.m;
  ComplexMatrix out = ComplexMatrix::identity(m);
  for (std::size_t j = 0; j < data.n; ++j) {
    const cxd pole{0.0, data.lambdas[j]};
    const cxd d = z - pole;
    if (std::abs(d) <= 1e-12 * (1.0 + std::abs(data.lambdas[j]))) {
      throw PreconditionError("phi: z coincides with the pole i*lambda_" +
                              std::to_string(j + 1));
    }
    const cxd w = 1.0 / (d * d);
    const std::vector<cxd>& bj = data.b_vectors[j];
    for (std::size_t r = 0; r < m; ++r)
      for (std::size_t c = 0; c < m; ++c)
        out(r, c) -= w * bj[r] * std::conj(bj[c]);
  }
  return out;
}

double d0(const SpectralData& data) {
  if (data.b_norms.empty()) return 0.0;
  return *std::min_element(data.b_norms.begin(), data.b_norms.end());
}

DucBounds duc_bounds(const SpectralData& data) {
  DucBounds out;
  if (data.m >= data.n) {
    return out;  // inapplicable marker
  }
  out.applicable = true;
  // smallest disk containing m+1 spectrum points has radius Delta_m / 2
  out.upper = std::min(d0(data), 0.5 * data.Delta_at(data.m));
  if (data.m == 1) {
    const double duc = out.upper;
    const double denom = std::sqrt(data.B_norm * data.B_norm + 2.0 * duc * duc);
    out.gamma_lower_m1 = denom > 0.0 ? duc * duc / denom : 0.0;
  }
  return out;
}

}  // namespace lqrdecay

#include "lqrdecay/string_model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "lqrdecay/linalg.hpp"

namespace lqrdecay {

void validate(const StringConfig& cfg, bool require_indices) {
  if (cfg.N == 0) throw PreconditionError("string: N must be >= 1");
  if (cfg.m == 0 || cfg.m > cfg.N) {
    throw PreconditionError("string: control count must satisfy 1 <= m <= N");
  }
  if (!(cfg.tau_over_h > 0.0) || !(cfg.mass > 0.0)) {
    throw PreconditionError("string: tau/h and mass must be positive");
  }
  if (!require_indices && cfg.J.empty()) return;
  if (cfg.J.size() != cfg.m) {
    throw PreconditionError("string: J must list exactly m indices");
  }
  for (std::size_t i = 0; i < cfg.J.size(); ++i) {
    if (cfg.J[i] < 1 || cfg.J[i] > cfg.N) {
      throw PreconditionError("string: actuator index out of range 1..N");
    }
    if (i > 0 && cfg.J[i] <= cfg.J[i - 1]) {
      throw PreconditionError("string: J must be strictly increasing");
    }
  }
}

double closed_form_lambda(const StringConfig& cfg, int k) {
  const double root = std::sqrt(cfg.tau_over_h / cfg.mass);
  return -2.0 * root *
         std::sin(static_cast<double>(k) * std::numbers::pi /
                  (2.0 * static_cast<double>(cfg.N + 1)));
}

std::vector<cxd> closed_form_eigenvector(const StringConfig& cfg, int k) {
  if (k == 0 || std::abs(k) > static_cast<int>(cfg.N)) {
    throw PreconditionError("string: mode index must be in -N..N, nonzero");
  }
  const std::size_t n = cfg.N;
  const double lambda = closed_form_lambda(cfg, k);
  std::vector<cxd> v(2 * n);
  const cxd inv_il = 1.0 / cxd{0.0, lambda};
  for (std::size_t l = 1; l <= n; ++l) {
    const double w = std::sin(static_cast<double>(k) * static_cast<double>(l) *
                              std::numbers::pi /
                              static_cast<double>(n + 1));
    v[l - 1] = inv_il * w;
    v[n + l - 1] = w;
  }
  return v;
}

SpectralData closed_form_bounds(const StringConfig& cfg) {
  validate(cfg);
  const std::size_t n = cfg.N;
  const double mscale = 1.0 / (cfg.mass * static_cast<double>(n + 1));

  struct Mode {
    double lambda;
    std::vector<cxd> b;
    double b_norm;
  };
  std::vector<Mode> modes;
  modes.reserve(2 * n);
  for (int k = -static_cast<int>(n); k <= static_cast<int>(n); ++k) {
    if (k == 0) continue;
    Mode mode;
    mode.lambda = closed_form_lambda(cfg, k);
    mode.b.resize(cfg.m);
    double acc = 0.0;
    for (std::size_t l = 0; l < cfg.m; ++l) {
      const double s =
          std::sin(static_cast<double>(k) *
                   static_cast<double>(cfg.J[l]) * std::numbers::pi /
                   static_cast<double>(n + 1));
      mode.b[l] = mscale * s;
      acc += s * s;
    }
    mode.b_norm = mscale * std::sqrt(acc);
    modes.push_back(std::move(mode));
  }
  std::sort(modes.begin(), modes.end(),
            [](const Mode& a, const Mode& b) { return a.lambda < b.lambda; });

  SpectralData data;
  data.n = 2 * n;
  data.m = cfg.m;
  data.lambdas.reserve(2 * n);
  data.b_vectors.reserve(2 * n);
  data.b_norms.reserve(2 * n);
  for (auto& mode : modes) {
    data.lambdas.push_back(mode.lambda);
    data.b_vectors.push_back(std::move(mode.b));
    data.b_norms.push_back(mode.b_norm);
  }
  // sqrt(N+1) B0 is an E-isometry, so every singular value of B equals
  // 1 / (M sqrt(N+1)).
  const double sv = 1.0 / (cfg.mass * std::sqrt(static_cast<double>(n + 1)));
  data.sigma.assign(cfg.m, sv);
  data.B_norm = sv;
  data.B_frobenius = sv * std::sqrt(static_cast<double>(cfg.m));
  finalize_separations(data);
  return data;
}

StringSystem build_string(const StringConfig& cfg) {
  validate(cfg);
  const std::size_t n = cfg.N;
  const double k_over_m = cfg.tau_over_h / cfg.mass;

  ComplexMatrix a0(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a0(i, i) = 2.0;
    if (i + 1 < n) {
      a0(i, i + 1) = -1.0;
      a0(i + 1, i) = -1.0;
    }
  }

  StringSystem out;
  out.A_raw = ComplexMatrix(2 * n, 2 * n);
  out.A_raw.set_block(0, n, ComplexMatrix::identity(n));
  out.A_raw.set_block(n, 0, a0 * cxd{-k_over_m, 0.0});

  out.B_raw = ComplexMatrix(2 * n, cfg.m);
  for (std::size_t l = 0; l < cfg.m; ++l) {
    out.B_raw(n + cfg.J[l] - 1, l) = 1.0 / cfg.mass;
  }

  const double gs = 1.0 / static_cast<double>(n + 1);
  out.gram = ComplexMatrix(2 * n, 2 * n);
  out.gram.set_block(0, 0, a0 * cxd{gs * k_over_m, 0.0});
  out.gram.set_block(n, n, ComplexMatrix::identity(n) * cxd{gs, 0.0});

  out.cholesky_L = cholesky(out.gram);
  const ComplexMatrix u = out.cholesky_L.adjoint();  // G = L L*, x~ = L* x

  // A~ = L* A_raw L^{-*}: right-solve T = (U A_raw) U^{-1} through the
  // transposed system.
  const ComplexMatrix t = u * out.A_raw;
  const ComplexMatrix a_t =
      solve_linear(u.transpose(), t.transpose()).transpose();
  const ComplexMatrix b_t = u * out.B_raw;

  out.sys = make_system(a_t, b_t, {}, {},
                        "string N=" + std::to_string(cfg.N) +
                            " m=" + std::to_string(cfg.m));
  const double defect = out.sys.A.skew_hermitian_defect();
  if (defect > 1e-9 * (1.0 + out.sys.A.frobenius_norm())) {
    throw ConvergenceError(
        "build_string: transformed A failed the skew-Hermitian check");
  }
  out.closed_form = closed_form_bounds(cfg);
  return out;
}

}  // namespace lqrdecay

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "lqrdecay/bounds.hpp"
#include "lqrdecay/string_model.hpp"
#include "test_util.hpp"

using namespace lqrdecay;

namespace {

StringConfig make_cfg(std::size_t n, std::vector<std::size_t> j,
                      double tau_over_h = 10.0, double mass = 50.0) {
  StringConfig cfg;
  cfg.N = n;
  cfg.m = j.size();
  cfg.tau_over_h = tau_over_h;
  cfg.mass = mass;
  cfg.J = std::move(j);
  return cfg;
}

}  // namespace

TEST_CASE("validate: rejects malformed configurations") {
  CHECK_THROWS_AS(validate(make_cfg(5, {0})), PreconditionError);
  CHECK_THROWS_AS(validate(make_cfg(5, {6})), PreconditionError);
  CHECK_THROWS_AS(validate(make_cfg(5, {3, 2})), PreconditionError);
  CHECK_THROWS_AS(validate(make_cfg(5, {2, 2})), PreconditionError);
  StringConfig bad = make_cfg(5, {1, 2});
  bad.m = 3;  // J has 2 entries
  CHECK_THROWS_AS(validate(bad), PreconditionError);
  CHECK_NOTHROW(validate(make_cfg(5, {1, 4})));
}

TEST_CASE("build_string: N = 1 closed forms by hand") {
  const StringConfig cfg = make_cfg(1, {1}, 1.0, 1.0);
  const StringSystem ss = build_string(cfg);
  CHECK(ss.sys.A.rows() == 2);
  // A0 = [2], lambda = +-2 sin(pi/4) = +-sqrt(2)
  CHECK(ss.closed_form.lambdas[0] ==
        doctest::Approx(-std::sqrt(2.0)).epsilon(1e-14));
  CHECK(ss.closed_form.lambdas[1] ==
        doctest::Approx(std::sqrt(2.0)).epsilon(1e-14));
  const SpectralData numeric = decompose(ss.sys.A, ss.sys.B);
  CHECK(numeric.lambdas[0] == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
}

TEST_CASE("closed forms: ||B|| formula and spectral symmetry") {
  const StringConfig cfg = make_cfg(30, {7});
  const SpectralData data = closed_form_bounds(cfg);
  CHECK(data.B_norm ==
        doctest::Approx(1.0 / (50.0 * std::sqrt(31.0))).epsilon(1e-12));
  CHECK(data.sigma_min() == doctest::Approx(data.B_norm));
  // lambda_{-k} = -lambda_k
  for (int k = 1; k <= 30; ++k) {
    CHECK(closed_form_lambda(cfg, -k) ==
          doctest::Approx(-closed_form_lambda(cfg, k)).epsilon(1e-15));
  }
}

TEST_CASE("build_string: energy conservation identity") {
  std::mt19937 rng(83);
  for (int trial = 0; trial < 4; ++trial) {
    const std::size_t n = 2 + rng() % 10;
    const std::size_t m = 1 + rng() % n;
    std::vector<std::size_t> j;
    for (std::size_t i = 1; i <= n && j.size() < m; ++i) {
      if (rng() % 2 == 0 || n - i < m - j.size()) j.push_back(i);
    }
    const StringConfig cfg =
        make_cfg(n, j, testutil::urand(rng, 0.5, 20.0),
                 testutil::urand(rng, 1.0, 100.0));
    const StringSystem ss = build_string(cfg);
    CHECK((ss.gram * ss.A_raw + ss.A_raw.adjoint() * ss.gram)
              .frobenius_norm() <= 1e-10);
    CHECK(ss.sys.A.skew_hermitian_defect() <=
          1e-9 * (1.0 + ss.sys.A.frobenius_norm()));
  }
}

TEST_CASE("closed forms match the numeric pipeline") {
  std::mt19937 rng(89);
  for (int trial = 0; trial < 5; ++trial) {
    const std::size_t n = 3 + rng() % 18;
    const std::size_t m = 1 + rng() % std::min<std::size_t>(n, 4);
    std::vector<std::size_t> j;
    for (std::size_t i = 1; i <= n && j.size() < m; ++i) {
      if (rng() % 3 == 0 || n - i < m - j.size()) j.push_back(i);
    }
    const StringConfig cfg = make_cfg(n, j);
    const StringSystem ss = build_string(cfg);
    const SpectralData numeric = decompose(ss.sys.A, ss.sys.B);
    const SpectralData& cf = ss.closed_form;
    REQUIRE(numeric.n == cf.n);
    for (std::size_t k = 0; k < cf.n; ++k) {
      CHECK(std::abs(numeric.lambdas[k] - cf.lambdas[k]) <=
            1e-8 * std::max(1e-12, std::abs(cf.lambdas[k])));
      CHECK(std::abs(numeric.b_norms[k] - cf.b_norms[k]) <=
            1e-8 * std::max(cf.b_norms[k], 1e-12));
    }
    CHECK(std::abs(numeric.B_norm - cf.B_norm) <= 1e-8 * cf.B_norm);
  }
}

TEST_CASE("closed-form eigenvectors are energy-orthonormal eigenvectors") {
  const StringConfig cfg = make_cfg(7, {2, 5});
  const StringSystem ss = build_string(cfg);
  const ComplexMatrix u = ss.cholesky_L.adjoint();
  for (int k : {-7, -3, 1, 4, 7}) {
    const std::vector<cxd> v = closed_form_eigenvector(cfg, k);
    // E-normalization: the transformed vector has unit euclidean norm
    std::vector<cxd> vt = u * v;
    CHECK(vector_norm(vt) == doctest::Approx(1.0).epsilon(1e-8));
    // and it is an eigenvector of the transformed A
    const double lambda = closed_form_lambda(cfg, k);
    const std::vector<cxd> av = ss.sys.A * vt;
    double resid = 0.0;
    for (std::size_t i = 0; i < vt.size(); ++i) {
      resid += std::norm(av[i] - cxd{0.0, lambda} * vt[i]);
    }
    CHECK(std::sqrt(resid) <= 1e-8 * (1.0 + std::abs(lambda)));
  }
}

TEST_CASE("transformed B is a scaled isometry") {
  const StringConfig cfg = make_cfg(9, {1, 4, 8});
  const StringSystem ss = build_string(cfg);
  const ComplexMatrix gram = ss.sys.B.adjoint() * ss.sys.B;
  const double expect = 1.0 / (cfg.mass * cfg.mass * static_cast<double>(cfg.N + 1));
  CHECK((gram - ComplexMatrix::identity(3) * cxd{expect, 0.0})
            .frobenius_norm() <= 1e-10);
}

TEST_CASE("actuator on a mode node kills controllability of that mode") {
  // N = 3, J = (2): sin(2 k pi / 4) = 0 for k = 2
  const StringConfig cfg = make_cfg(3, {2});
  const SpectralData data = closed_form_bounds(cfg);
  // sin(pi) in floating point is ~1e-16, not exactly zero
  CHECK(d0(data) <= 1e-17);
  const auto [ell, ell1] = ell_est_bounds(data);
  CHECK(ell <= 1e-17);
}

TEST_CASE("benchmark configuration admits the reported best bounds") {
  const StringConfig cfg = make_cfg(30, {2, 5, 11, 19, 27});
  const BoundReport rep = summarize(closed_form_bounds(cfg));
  // gamma for this configuration is 8.87e-4; bounds must bracket it
  CHECK(rep.best_upper >= 8.87e-4 * 0.98);
  CHECK(rep.best_lower <= 8.87e-4 * 1.02);
}

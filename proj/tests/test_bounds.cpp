#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <sstream>
#include <string>

#include "lqrdecay/bounds.hpp"
#include "lqrdecay/catalog.hpp"
#include "lqrdecay/riccati.hpp"
#include "test_util.hpp"

using namespace lqrdecay;
using testutil::random_matrix;
using testutil::random_skew_hermitian;

namespace {

SpectralData four_mode_data(double a, double b) {
  const SystemSpec sys = catalog::four_mode_system(a, b);
  return decompose(sys.A, sys.B);
}

}  // namespace

TEST_CASE("ell_est_bounds: pinned rows") {
  {
    // ||b_k|| = 1, ||B||^2 = 2, delta_k = 30 -> 1 / (sqrt(2) (1 + 4/900))
    const auto [ell, ell1] = ell_est_bounds(four_mode_data(15.0, 45.0));
    CHECK(ell == doctest::Approx(1.0 / (std::sqrt(2.0) * (1.0 + 4.0 / 900.0)))
                     .epsilon(1e-12));
    CHECK(ell == doctest::Approx(0.7040).epsilon(1e-3));
    CHECK(!ell1);  // m = 2
  }
  {
    const auto [ell, ell1] = ell_est_bounds(four_mode_data(4.0, 4.1));
    CHECK(ell == doctest::Approx(0.0018).epsilon(0.05));
  }
  {
    // coincident eigenvalues force zero
    const SpectralData data = decompose(
        ComplexMatrix::diagonal({cxd{0.0, 3.0}, cxd{0.0, 3.0}}),
        ComplexMatrix::identity(2));
    CHECK(data.delta == 0.0);
    const auto [ell, ell1] = ell_est_bounds(data);
    CHECK(ell == 0.0);
  }
}

TEST_CASE("exclusion_geometry: vertices and radii") {
  {
    const SpectralData data = decompose(
        ComplexMatrix::diagonal({cxd{0.0, 0.0}, cxd{0.0, 2.0}}),
        ComplexMatrix::identity(2));
    const ExclusionGeometry g = exclusion_geometry(data);
    REQUIRE(g.triangles.size() == 1);
    CHECK(std::abs(g.triangles[0].v0 - cxd{0.0, 0.0}) <= 1e-14);
    CHECK(std::abs(g.triangles[0].v1 - cxd{0.0, 2.0}) <= 1e-14);
    CHECK(std::abs(g.triangles[0].v2 - cxd{-1.0, 1.0}) <= 1e-14);
    CHECK(g.re_min == doctest::Approx(-1.0));
  }
  {
    const ExclusionGeometry g = exclusion_geometry(four_mode_data(15.0, 45.0));
    for (double r : g.disk_radii) {
      CHECK(r == doctest::Approx(1.0 / (1.0 + 4.0 / 900.0)).epsilon(1e-12));
    }
    // every triangle lives in the closed left half-plane
    for (const Triangle& t : g.triangles) {
      CHECK(t.v0.real() <= 0.0);
      CHECK(t.v1.real() <= 0.0);
      CHECK(t.v2.real() <= 0.0);
    }
  }
  {
    // fully coincident spectrum: every disk collapses
    const SpectralData data = decompose(
        ComplexMatrix::diagonal({cxd{0.0, 1.0}, cxd{0.0, 1.0}}),
        ComplexMatrix::identity(2));
    const ExclusionGeometry g = exclusion_geometry(data);
    for (double r : g.disk_radii) CHECK(r == 0.0);
  }
}

TEST_CASE("check_spectrum_in_region: verdicts") {
  const SpectralData data = four_mode_data(15.0, 45.0);
  const ExclusionGeometry g = exclusion_geometry(data);

  const SystemSpec sys = catalog::four_mode_system(15.0, 45.0);
  const CareSolution sol = solve_care(sys);
  for (const RegionVerdict& v :
       check_spectrum_in_region(sol.closed_loop_eigs, g)) {
    CHECK(v.ok());
  }

  const auto bad = check_spectrum_in_region({cxd{1.0, 0.0}}, g);
  REQUIRE(bad.size() == 1);
  CHECK(!bad[0].ok());
  CHECK(bad[0].violations[0].find("not in box") != std::string::npos);

  // the center of the first disk
  const auto center = check_spectrum_in_region({cxd{-1e-9, -45.0}}, g);
  bool inside_disk = false;
  for (const auto& s : center[0].violations) {
    inside_disk |= s.find("inside disk k=1") != std::string::npos;
  }
  CHECK(inside_disk);
}

TEST_CASE("band_split: the narrow-spectrum row and inapplicability") {
  {
    const BandSplit b = band_split(four_mode_data(0.1, 0.11));
    REQUIRE(b.applicable);
    CHECK(b.inner_lo == doctest::Approx(-1.4142).epsilon(1e-4));
    CHECK(b.inner_hi == doctest::Approx(-0.8660).epsilon(1e-4));
    CHECK(b.outer_lo == doctest::Approx(-0.3811).epsilon(1e-3));
    CHECK(b.inner_count == 2);
    CHECK(b.outer_count == 2);

    const SystemSpec sys = catalog::four_mode_system(0.1, 0.11);
    const CareSolution sol = solve_care(sys);
    std::size_t inner = 0, outer = 0;
    for (const cxd& nu : sol.closed_loop_eigs) {
      if (nu.real() >= b.inner_lo - 1e-9 && nu.real() <= b.inner_hi + 1e-9)
        ++inner;
      if (nu.real() > b.outer_lo && nu.real() < 0.0) ++outer;
      CHECK((std::abs(nu.real() + 1.4024) <= 1e-3 ||
             std::abs(nu.real() + 0.1062) <= 1e-3));
    }
    CHECK(inner == 2);
    CHECK(outer == 2);
  }
  CHECK(!band_split(four_mode_data(15.0, 45.0)).applicable);
  {
    // Delta = 0 with positive sigma_m is always applicable
    const SpectralData data = decompose(
        ComplexMatrix::diagonal({cxd{0.0, 3.0}, cxd{0.0, 3.0}}),
        ComplexMatrix::identity(2));
    const BandSplit b = band_split(data);
    CHECK(b.applicable);
    CHECK(b.inner_count == 2);
    CHECK(b.outer_count == 0);
  }
}

TEST_CASE("decay_upper_bounds") {
  {
    const UpperBounds u = decay_upper_bounds(four_mode_data(15.0, 45.0));
    CHECK(u.b_norm == doctest::Approx(std::sqrt(2.0)));
    CHECK(!u.sqrt3_delta);
    CHECK(!u.two_sqrt2_delta);
  }
  {
    const UpperBounds u = decay_upper_bounds(four_mode_data(0.1, 0.11));
    REQUIRE(u.sqrt3_delta);
    CHECK(*u.sqrt3_delta == doctest::Approx(0.3811).epsilon(1e-3));
    const SystemSpec sys = catalog::four_mode_system(0.1, 0.11);
    CHECK(gamma_decay(solve_care(sys).closed_loop_eigs) < *u.sqrt3_delta);
  }
  {
    // m = 1 cap is 2 sqrt(2) Delta
    ComplexMatrix b(2, 1);
    b(0, 0) = 1.0;
    b(1, 0) = 1.0;
    const SpectralData data = decompose(
        ComplexMatrix::diagonal({cxd{0.0, 0.0}, cxd{0.0, 1.0}}), b);
    const UpperBounds u = decay_upper_bounds(data);
    REQUIRE(u.two_sqrt2_delta);
    CHECK(*u.two_sqrt2_delta == doctest::Approx(2.0 * std::sqrt(2.0)));
  }
}

TEST_CASE("rouche_disks: pinned radii and the count assertion") {
  {
    const auto disks = rouche_disks(four_mode_data(15.0, 45.0));
    const SystemSpec sys = catalog::four_mode_system(15.0, 45.0);
    const CareSolution sol = solve_care(sys);
    for (const RoucheDisk& d : disks) {
      REQUIRE(d.applicable);
      CHECK(d.radius == doctest::Approx(0.012952).epsilon(1e-3));
      std::size_t inside = 0;
      for (const cxd& nu : sol.closed_loop_eigs) {
        if (std::abs(nu - d.center) < d.radius + 1e-9) ++inside;
      }
      CHECK(inside == 1);
    }
  }
  {
    // separation condition fails: flagged inapplicable
    const auto disks = rouche_disks(four_mode_data(4.0, 4.1));
    for (const RoucheDisk& d : disks) CHECK(!d.applicable);
  }
  {
    // scalar system: disk radius 0 with the closed-loop eigenvalue at the
    // center exactly
    const SystemSpec sys = make_system(
        ComplexMatrix::from_rows({{cxd{0.0, 3.0}}}),
        ComplexMatrix::from_rows({{cxd{2.0}}}));
    const SpectralData data = decompose(sys.A, sys.B);
    const auto disks = rouche_disks(data);
    REQUIRE(disks.size() == 1);
    CHECK(disks[0].applicable);
    CHECK(disks[0].radius == 0.0);
    CHECK(std::abs(disks[0].center - cxd{-2.0, 3.0}) <= 1e-14);
    const CareSolution sol = solve_care(sys);
    CHECK(std::abs(sol.closed_loop_eigs[0] - disks[0].center) <= 1e-9);
  }
}

TEST_CASE("gamma_brackets: pinned rows") {
  {
    const GammaBrackets c = gamma_brackets(four_mode_data(15.0, 45.0));
    for (double p : c.phi_k) CHECK(p == doctest::Approx(0.012952).epsilon(1e-3));
    REQUIRE(c.gamma_minus);
    REQUIRE(c.gamma_plus);
    CHECK(*c.gamma_minus == doctest::Approx(0.9870).epsilon(1e-3));
    CHECK(*c.gamma_plus == doctest::Approx(1.0130).epsilon(1e-3));
  }
  {
    const GammaBrackets c = gamma_brackets(four_mode_data(1.0, 10.0));
    CHECK(!c.gamma_minus);
    REQUIRE(c.gamma_plus);
    CHECK(*c.gamma_plus == doctest::Approx(1.1439).epsilon(1e-3));
  }
  {
    const GammaBrackets c = gamma_brackets(four_mode_data(4.0, 4.1));
    CHECK(!c.gamma_minus);
    CHECK(!c.gamma_plus);
  }
}

TEST_CASE("sigma0_mu: bisection oracle for theta = 2, m = 2") {
  // hand-expanded cubic: P(s) = -2 s^3 + 5 s^2 + 4 s + 2
  const auto cubic = [](double s) {
    return -2.0 * s * s * s + 5.0 * s * s + 4.0 * s + 2.0;
  };
  double lo = 2.0, hi = 8.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (cubic(mid) > 0.0 ? lo : hi) = mid;
  }
  const double sigma0_ref = 0.5 * (lo + hi);

  const Sigma0Mu sm = sigma0_mu(2.0, 2);
  CHECK(sm.sigma0 == doctest::Approx(sigma0_ref).epsilon(1e-12));
  CHECK(sm.sigma0 == doctest::Approx(3.21).epsilon(1e-2));
  CHECK(sm.mu == doctest::Approx(0.0260).epsilon(1e-2));

  // maximality of f at sigma0, and vanishing at theta and infinity
  const auto f = [](double s, double theta) {
    return (s - theta) / (s + s * s + s * s * s);
  };
  const double eps = 1e-4 * sm.sigma0;
  CHECK(f(sm.sigma0 - eps, 2.0) < f(sm.sigma0, 2.0));
  CHECK(f(sm.sigma0 + eps, 2.0) < f(sm.sigma0, 2.0));
  CHECK(f(2.0, 2.0) == 0.0);
  CHECK(f(1e9, 2.0) <= 1e-9);

  CHECK_THROWS_AS(sigma0_mu(0.5, 2), PreconditionError);
  CHECK_THROWS_AS(sigma0_mu(2.0, 1), PreconditionError);
}

TEST_CASE("rho_bound: pinned rows") {
  CHECK(*rho_bound(four_mode_data(15.0, 45.0)) ==
        doctest::Approx(0.0806).epsilon(1e-2));
  CHECK(*rho_bound(four_mode_data(0.2, 0.22)) ==
        doctest::Approx(0.0396).epsilon(1e-2));
  CHECK(*rho_bound(four_mode_data(0.1, 0.11)) ==
        doctest::Approx(0.0198).epsilon(1e-2));

  // the bound is honored by the computed spectrum
  for (auto [a, b] : {std::pair{0.2, 0.22}, std::pair{0.1, 0.11}}) {
    const SystemSpec sys = catalog::four_mode_system(a, b);
    const double gamma = gamma_decay(solve_care(sys).closed_loop_eigs);
    CHECK(gamma >= *rho_bound(four_mode_data(a, b)) - 1e-9);
  }

  // m = 1 is out of scope for this estimate
  ComplexMatrix b1(2, 1);
  b1(0, 0) = 1.0;
  b1(1, 0) = 1.0;
  CHECK(!rho_bound(decompose(
      ComplexMatrix::diagonal({cxd{0.0, 0.0}, cxd{0.0, 1.0}}), b1)));
}

TEST_CASE("rho_bound: positive even with coincident eigenvalues") {
  // lambda = (0, 0, 5, 5): delta = 0 kills ell_est but Delta_2 = 5 > 0
  ComplexMatrix b(4, 2);
  b(0, 0) = b(2, 0) = 1.0;
  b(1, 1) = b(3, 1) = 1.0;
  const SpectralData data = decompose(
      ComplexMatrix::diagonal(
          {cxd{0.0, 0.0}, cxd{0.0, 0.0}, cxd{0.0, 5.0}, cxd{0.0, 5.0}}),
      b);
  CHECK(data.delta == 0.0);
  const BoundReport rep = summarize(data);
  CHECK(rep.ell_est == 0.0);
  REQUIRE(rep.rho);
  CHECK(*rep.rho > 0.0);
}

TEST_CASE("suboptimal_B: DFT construction") {
  std::mt19937 rng(73);
  const ComplexMatrix a = random_skew_hermitian(rng, 4, 5.0);
  const SpectralData base = decompose(a, ComplexMatrix::identity(4));

  {
    // full DFT is unitary
    const ComplexMatrix bhat = suboptimal_B(base.V, 4, 1.0);
    const auto sv = singular_values(bhat);
    for (double s : sv) CHECK(s == doctest::Approx(1.0).epsilon(1e-10));
    const SpectralData d = decompose(a, bhat);
    for (double bn : d.b_norms) CHECK(bn == doctest::Approx(1.0).epsilon(1e-9));
  }
  {
    const ComplexMatrix bhat = suboptimal_B(base.V, 2, 1.0);
    CHECK(spectral_norm(bhat) == doctest::Approx(1.0).epsilon(1e-10));
    const SpectralData d = decompose(a, bhat);
    for (double bn : d.b_norms) {
      CHECK(bn == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-9));
    }
  }
}

TEST_CASE("suboptimal_B condition: hypothesis flag and the half-supremum guarantee") {
  CHECK(suboptimal_B_condition(100.0, 4, 2, 1.0));
  CHECK(!suboptimal_B_condition(1.0, 4, 2, 1.0));

  // well-separated ladder: check the guarantee indirectly through the proof's
  // supremum cap sup <= beta sqrt(m/n) + (2/(2-sqrt2)^2) beta^3 / delta^2
  const double beta = 1.0, delta = 100.0;
  const std::size_t n = 4, m = 2;
  const ComplexMatrix a = ComplexMatrix::diagonal(
      {cxd{0.0, 0.0}, cxd{0.0, 100.0}, cxd{0.0, 200.0}, cxd{0.0, 300.0}});
  const SpectralData base = decompose(a, ComplexMatrix::identity(4));
  REQUIRE(suboptimal_B_condition(delta, n, m, beta));
  const ComplexMatrix bhat = suboptimal_B(base.V, m, beta);
  const SystemSpec sys = make_system(a, bhat);
  const double gamma = gamma_decay(solve_care(sys).closed_loop_eigs);
  const double c = 2.0 / ((2.0 - std::sqrt(2.0)) * (2.0 - std::sqrt(2.0)));
  const double sup_cap =
      beta * std::sqrt(static_cast<double>(m) / static_cast<double>(n)) +
      c * beta * beta * beta / (delta * delta);
  CHECK(gamma > 0.5 * sup_cap);
}

TEST_CASE("summarize: aggregation invariants on random systems") {
  std::mt19937 rng(79);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + rng() % 7;
    const std::size_t m = 1 + rng() % n;
    const ComplexMatrix a = random_skew_hermitian(rng, n, 4.0);
    const ComplexMatrix b = random_matrix(rng, n, m);
    const SpectralData data = decompose(a, b);
    const BoundReport rep = summarize(data);

    // rho_k <= rho1_k <= ||b_k|| (algebraic)
    const auto rho = rho_radii(data);
    const auto rho1 = rho1_radii(data);
    for (std::size_t k = 0; k < n; ++k) {
      CHECK(rho[k] <= rho1[k] + 1e-15);
      CHECK(rho1[k] <= data.b_norms[k] + 1e-15);
    }
    // ell_est is min_k rho_k / sqrt(2) by definition
    CHECK(rep.ell_est ==
          doctest::Approx(*std::min_element(rho.begin(), rho.end()) /
                          std::sqrt(2.0))
              .epsilon(1e-14));
    // ell_est caps
    if (!std::isinf(data.delta) && data.B_norm > 0.0) {
      CHECK(rep.ell_est <=
            (std::sqrt(2.0) / 4.0) *
                    std::sqrt(static_cast<double>(m) /
                              static_cast<double>(n)) *
                    data.delta * data.delta / data.B_norm +
                1e-12);
      if (m == 1 && rep.ell_est1) {
        CHECK(*rep.ell_est1 <=
              data.delta / (2.0 * std::sqrt(static_cast<double>(n))) + 1e-12);
      }
    }
    CHECK(rep.best_lower <= rep.best_upper + 1e-9);

    const SystemSpec sys = make_system(a, b);
    const double gamma = gamma_decay(solve_care(sys).closed_loop_eigs);
    CHECK(rep.best_lower < gamma);
    CHECK(gamma <= rep.best_upper + 1e-9);
  }
}

TEST_CASE("summarize: m = 1 report carries the single-control variants") {
  ComplexMatrix b(3, 1);
  b(0, 0) = 1.0;
  b(1, 0) = 0.5;
  b(2, 0) = 1.0;
  const SpectralData data = decompose(
      ComplexMatrix::diagonal({cxd{0.0, -4.0}, cxd{0.0, 0.0}, cxd{0.0, 4.0}}),
      b);
  const BoundReport rep = summarize(data);
  CHECK(rep.ell_est1.has_value());
  CHECK(rep.rho1_k.has_value());
  CHECK(rep.upper_m1.has_value());
  CHECK(*rep.ell_est1 >= rep.ell_est);
  CHECK(!rep.rho);  // the Delta_m estimate needs m >= 2
}

TEST_CASE("non-skew counterexamples break the skew-only bounds") {
  {
    const SystemSpec sys = catalog::nonskew_pair2(100.0);
    const double gamma = gamma_decay(solve_care(sys).closed_loop_eigs);
    CHECK(gamma > spectral_norm(sys.B));  // upper bound fails
  }
  {
    const SystemSpec sys = catalog::nonskew_pair3(100.0);
    const double gamma = gamma_decay(solve_care(sys).closed_loop_eigs);
    const SpectralData data = decompose(sys.A, sys.B, /*allow_non_skew=*/true);
    const auto [ell, ell1] = ell_est_bounds(data);
    REQUIRE(ell1);
    CHECK(gamma < *ell1);  // lower bound fails
  }
}

TEST_CASE("plot_script: primitive format") {
  const SpectralData data = four_mode_data(15.0, 45.0);
  const std::string script =
      plot_script(exclusion_geometry(data), {cxd{-1.0, 2.0}});
  std::size_t circles = 0, segments = 0, points = 0;
  std::istringstream is(script);
  std::string line;
  while (std::getline(is, line)) {
    if (line.rfind("circle ", 0) == 0) ++circles;
    else if (line.rfind("segment ", 0) == 0) ++segments;
    else if (line.rfind("point ", 0) == 0) ++points;
    else FAIL("unexpected plot line: " << line);
  }
  CHECK(circles == 4);       // one disk per eigenvalue
  CHECK(segments == 4 + 9);  // box + three triangles
  CHECK(points == 1);
}

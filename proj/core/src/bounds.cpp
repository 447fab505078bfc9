#include "lqrdecay/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <sstream>

#include "lqrdecay/linalg.hpp"

namespace lqrdecay {

namespace {

const double kTwoMinusSqrt2Sq = (2.0 - std::numbers::sqrt2) * (2.0 - std::numbers::sqrt2);

double ratio_2b2_over_dk2(const SpectralData& data, std::size_t k) {
  const double dk = data.delta_k[k];
  if (std::isinf(dk)) return 0.0;
  if (dk <= 0.0) return std::numeric_limits<double>::infinity();
  const double r = data.B_norm / dk;
  return 2.0 * r * r;
}

double cross2(cxd a, cxd b) {
  return a.real() * b.imag() - a.imag() * b.real();
}

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

}  // namespace

std::vector<double> rho_radii(const SpectralData& data) {
  std::vector<double> rho(data.n);
  for (std::size_t k = 0; k < data.n; ++k) {
    const double s = ratio_2b2_over_dk2(data, k);
    rho[k] = std::isinf(s) ? 0.0 : data.b_norms[k] / (1.0 + s);
  }
  return rho;
}

std::vector<double> rho1_radii(const SpectralData& data) {
  std::vector<double> rho(data.n);
  for (std::size_t k = 0; k < data.n; ++k) {
    const double s = ratio_2b2_over_dk2(data, k);
    rho[k] = std::isinf(s) ? 0.0 : data.b_norms[k] / std::sqrt(1.0 + s);
  }
  return rho;
}

std::pair<double, std::optional<double>> ell_est_bounds(
    const SpectralData& data) {
  const auto rho = rho_radii(data);
  const double ell =
      *std::min_element(rho.begin(), rho.end()) / std::numbers::sqrt2;
  std::optional<double> ell1;
  if (data.m == 1) {
    const auto rho1 = rho1_radii(data);
    ell1 = *std::min_element(rho1.begin(), rho1.end()) / std::numbers::sqrt2;
  }
  return {ell, ell1};
}

ExclusionGeometry exclusion_geometry(const SpectralData& data) {
  ExclusionGeometry g;
  g.re_min = -data.B_norm;
  g.im_min = data.lambdas.front();
  g.im_max = data.lambdas.back();
  g.tol = 1e-7 * std::max({1.0, data.B_norm, data.Delta});
  for (std::size_t k = 0; k + 1 < data.n; ++k) {
    const double lk = data.lambdas[k];
    const double lk1 = data.lambdas[k + 1];
    Triangle t;
    t.v0 = cxd{0.0, lk};
    t.v1 = cxd{0.0, lk1};
    t.v2 = cxd{-(lk1 - lk) / 2.0, (lk1 + lk) / 2.0};
    g.triangles.push_back(t);
  }
  const auto radii = data.m == 1 ? rho1_radii(data) : rho_radii(data);
  for (std::size_t k = 0; k < data.n; ++k) {
    g.disk_centers.push_back(cxd{0.0, data.lambdas[k]});
    g.disk_radii.push_back(radii[k]);
  }
  return g;
}

std::vector<RegionVerdict> check_spectrum_in_region(
    const std::vector<cxd>& eigs, const ExclusionGeometry& geom) {
  std::vector<RegionVerdict> verdicts;
  verdicts.reserve(eigs.size());
  const double tol = geom.tol;

  for (const cxd& nu : eigs) {
    RegionVerdict v;
    v.eigenvalue = nu;
    if (nu.real() >= 0.0) {
      v.violations.push_back("not in box: Re >= 0");
    }
    if (nu.real() < geom.re_min - tol) {
      v.violations.push_back("not in box: Re < -||B||");
    }
    if (nu.imag() < geom.im_min - tol || nu.imag() > geom.im_max + tol) {
      v.violations.push_back("not in box: Im outside [lambda_1, lambda_n]");
    }
    for (std::size_t k = 0; k < geom.disk_centers.size(); ++k) {
      if (geom.disk_radii[k] <= 0.0) continue;
      if (std::abs(nu - geom.disk_centers[k]) <= geom.disk_radii[k] - tol) {
        v.violations.push_back("inside disk k=" + std::to_string(k + 1));
      }
    }
    for (std::size_t k = 0; k < geom.triangles.size(); ++k) {
      const Triangle& t = geom.triangles[k];
      const double area2 = cross2(t.v1 - t.v0, t.v2 - t.v0);
      if (std::abs(area2) <= tol * tol) continue;  // degenerate
      double margin = std::numeric_limits<double>::infinity();
      const cxd verts[3] = {t.v0, t.v1, t.v2};
      for (int e = 0; e < 3; ++e) {
        const cxd a = verts[e];
        const cxd b = verts[(e + 1) % 3];
        const cxd c = verts[(e + 2) % 3];
        const double len = std::abs(b - a);
        double d = cross2(b - a, nu - a) / len;
        if (cross2(b - a, c - a) < 0.0) d = -d;  // interior side of c
        margin = std::min(margin, d);
      }
      if (margin > tol) {
        v.violations.push_back("inside triangle k=" + std::to_string(k + 1));
      }
    }
    verdicts.push_back(std::move(v));
  }
  return verdicts;
}

BandSplit band_split(const SpectralData& data) {
  BandSplit b;
  const double sm = data.sigma_min();
  if (!(sm > 2.0 * std::numbers::sqrt2 * data.Delta)) {
    return b;  // inapplicable marker
  }
  b.applicable = true;
  b.inner_lo = -data.B_norm;
  b.inner_hi = -(std::sqrt(6.0) / 4.0) * sm;
  b.outer_lo = -std::sqrt(3.0) * data.Delta;
  b.outer_hi = 0.0;
  b.inner_count = data.m;
  b.outer_count = data.n - data.m;
  return b;
}

UpperBounds decay_upper_bounds(const SpectralData& data) {
  UpperBounds u;
  u.b_norm = data.B_norm;
  if (data.sigma_min() > 2.0 * std::numbers::sqrt2 * data.Delta &&
      data.m < data.n) {
    u.sqrt3_delta = std::sqrt(3.0) * data.Delta;
  }
  // the m = 1 cap rests on the m < n band dichotomy, so it needs n >= 2
  if (data.m == 1 && data.n > 1) {
    u.two_sqrt2_delta = 2.0 * std::numbers::sqrt2 * data.Delta;
  }
  return u;
}

std::vector<RoucheDisk> rouche_disks(const SpectralData& data) {
  std::vector<RoucheDisk> disks(data.n);
  for (std::size_t k = 0; k < data.n; ++k) {
    RoucheDisk& d = disks[k];
    d.center = cxd{-data.b_norms[k], data.lambdas[k]};
    const double dk = data.delta_k[k];
    double q;  // ||B||^2 / delta_k^2
    if (std::isinf(dk)) {
      q = 0.0;
    } else if (dk <= 0.0) {
      q = std::numeric_limits<double>::infinity();
    } else {
      q = (data.B_norm / dk) * (data.B_norm / dk);
    }
    d.applicable = q < kTwoMinusSqrt2Sq / 2.0;
    d.radius = d.applicable ? (2.0 / kTwoMinusSqrt2Sq) * q * data.b_norms[k]
                            : 0.0;
  }
  return disks;
}

GammaBrackets gamma_brackets(const SpectralData& data) {
  GammaBrackets out;
  out.phi_k.resize(data.n);
  bool any = false;
  bool all = true;
  double gplus = std::numeric_limits<double>::infinity();
  double gminus = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < data.n; ++k) {
    const double dk = data.delta_k[k];
    double phi;
    if (std::isinf(dk)) {
      phi = 0.0;
    } else if (dk <= 0.0) {
      phi = std::numeric_limits<double>::infinity();
    } else {
      phi = 2.0 * data.B_norm * data.B_norm / (kTwoMinusSqrt2Sq * dk * dk);
    }
    out.phi_k[k] = phi;
    if (phi < 1.0) {
      any = true;
      gplus = std::min(gplus, (1.0 + phi) * data.b_norms[k]);
      gminus = std::min(gminus, (1.0 - phi) * data.b_norms[k]);
    } else {
      all = false;
    }
  }
  if (any) out.gamma_plus = gplus;
  if (any && all) out.gamma_minus = gminus;
  return out;
}

Sigma0Mu sigma0_mu(double theta, std::size_t m) {
  if (!(theta >= 1.0)) {
    throw PreconditionError("sigma0_mu: theta must be >= 1");
  }
  if (m < 2) {
    throw PreconditionError("sigma0_mu: m must be >= 2");
  }
  const auto s1 = [m](double s) {
    double acc = 0.0, p = 1.0;
    for (std::size_t i = 1; i <= m + 1; ++i) {
      p *= s;
      acc += p;
    }
    return acc;
  };
  const auto poly = [&](double s) {
    double s2 = 0.0, p = 1.0;
    for (std::size_t j = 0; j <= m; ++j) {
      s2 += static_cast<double>(j + 1) * p;
      p *= s;
    }
    const double v = s1(s) - s2 * (s - theta);
    return std::isfinite(v) ? v : -std::numeric_limits<double>::infinity();
  };

  // P(theta) > 0 and P is strictly decreasing on (theta, inf): double the
  // upper end until the sign flips, then bisect.
  double lo = theta;
  double hi = 2.0 * theta;
  int doublings = 0;
  while (poly(hi) > 0.0) {
    hi *= 2.0;
    if (++doublings > 200) {
      throw ConvergenceError("sigma0_mu: bracket expansion failed");
    }
  }
  for (int it = 0; it < 200 && (hi - lo) > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (poly(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  Sigma0Mu out;
  out.sigma0 = 0.5 * (lo + hi);
  out.mu = (out.sigma0 - theta) / s1(out.sigma0);
  return out;
}

std::optional<double> rho_bound(const SpectralData& data) {
  const std::size_t m = data.m;
  const std::size_t n = data.n;
  if (m < 2 || m >= n) return std::nullopt;
  const double delta_m = data.Delta_at(m);
  if (!(delta_m > 0.0)) return std::nullopt;

  // projection constant: gamma = min_k sigma_min([b_k ... b_{k+m-1}]),
  // valid because the eigenvectors v_j are orthonormal
  double gamma = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k + m <= n; ++k) {
    ComplexMatrix cols(m, m);
    for (std::size_t j = 0; j < m; ++j)
      for (std::size_t i = 0; i < m; ++i)
        cols(i, j) = data.b_vectors[k + j][i];
    gamma = std::min(gamma, smallest_singular_value(cols));
  }
  if (!(gamma > 0.0)) return std::nullopt;

  const double cap = data.B_norm;
  const double theta = std::max(1.0, (cap * cap) / (gamma * gamma));
  const Sigma0Mu sm = sigma0_mu(theta, m);
  const double series =
      (std::pow(sm.sigma0, static_cast<double>(m + 1)) - 1.0) /
      (sm.sigma0 - 1.0);
  const double first = delta_m / std::sqrt(2.0 * series - 1.0);
  const double second = gamma * std::sqrt(sm.mu);
  return 0.5 * std::min(first, second);
}

ComplexMatrix suboptimal_B(const ComplexMatrix& v, std::size_t m,
                           double beta) {
  v.require_square("suboptimal_B: V");
  const std::size_t n = v.rows();
  if (m == 0 || m > n) {
    throw PreconditionError("suboptimal_B: need 1 <= m <= n");
  }
  if (!(beta > 0.0)) {
    throw PreconditionError("suboptimal_B: beta must be positive");
  }
  ComplexMatrix w(n, m);
  const double scale = beta / std::sqrt(static_cast<double>(n));
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t l = 0; l < m; ++l) {
      const double angle =
          -2.0 * std::numbers::pi * static_cast<double>((j * l) % n) /
          static_cast<double>(n);
      w(j, l) = scale * cxd{std::cos(angle), std::sin(angle)};
    }
  }
  return v * w;
}

bool suboptimal_B_condition(double delta, std::size_t n, std::size_t m,
                           double beta) {
  if (std::isinf(delta)) return true;
  return delta * delta > (6.0 / kTwoMinusSqrt2Sq) *
                             std::sqrt(static_cast<double>(n) /
                                       static_cast<double>(m)) *
                             beta * beta;
}

BoundReport summarize(const SpectralData& data) {
  BoundReport r;
  r.rho_k = rho_radii(data);
  if (data.m == 1) r.rho1_k = rho1_radii(data);
  const auto [ell, ell1] = ell_est_bounds(data);
  r.ell_est = ell;
  r.ell_est1 = ell1;

  const GammaBrackets c6 = gamma_brackets(data);
  r.phi_k = c6.phi_k;
  r.Gamma_minus = c6.gamma_minus;
  r.Gamma_plus = c6.gamma_plus;

  r.rho = rho_bound(data);

  const UpperBounds up = decay_upper_bounds(data);
  r.upper_B_norm = up.b_norm;
  r.upper_sqrt3Delta = up.sqrt3_delta;
  r.upper_m1 = up.two_sqrt2_delta;

  r.rouche_disks = rouche_disks(data);
  r.band_split_info = band_split(data);

  r.best_lower = data.m == 1 && r.ell_est1 ? *r.ell_est1 : r.ell_est;
  if (r.Gamma_minus) r.best_lower = std::max(r.best_lower, *r.Gamma_minus);
  if (r.rho) r.best_lower = std::max(r.best_lower, *r.rho);

  r.best_upper = r.upper_B_norm;
  if (r.upper_sqrt3Delta) r.best_upper = std::min(r.best_upper, *r.upper_sqrt3Delta);
  if (r.upper_m1) r.best_upper = std::min(r.best_upper, *r.upper_m1);
  if (r.Gamma_plus) r.best_upper = std::min(r.best_upper, *r.Gamma_plus);
  return r;
}

std::string plot_script(const ExclusionGeometry& geom,
                        const std::vector<cxd>& eigs) {
  std::ostringstream os;
  const auto segment = [&](cxd a, cxd b) {
    os << "segment " << fmt(a.real()) << ' ' << fmt(a.imag()) << ' '
       << fmt(b.real()) << ' ' << fmt(b.imag()) << '\n';
  };
  const cxd bl{geom.re_min, geom.im_min};
  const cxd br{0.0, geom.im_min};
  const cxd tr{0.0, geom.im_max};
  const cxd tl{geom.re_min, geom.im_max};
  segment(bl, br);
  segment(br, tr);
  segment(tr, tl);
  segment(tl, bl);
  for (const Triangle& t : geom.triangles) {
    segment(t.v0, t.v1);
    segment(t.v1, t.v2);
    segment(t.v2, t.v0);
  }
  for (std::size_t k = 0; k < geom.disk_centers.size(); ++k) {
    os << "circle " << fmt(geom.disk_centers[k].real()) << ' '
       << fmt(geom.disk_centers[k].imag()) << ' ' << fmt(geom.disk_radii[k])
       << '\n';
  }
  for (std::size_t j = 0; j < eigs.size(); ++j) {
    os << "point " << fmt(eigs[j].real()) << ' ' << fmt(eigs[j].imag())
       << " nu_" << (j + 1) << '\n';
  }
  return os.str();
}

}  // namespace lqrdecay

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "lqrdecay/spectral.hpp"

namespace lqrdecay {

/// Closed right triangle hanging off a consecutive eigenvalue pair; the
/// closed-loop spectrum cannot enter it.
struct Triangle {
  cxd v0, v1, v2;
};

/// Box / triangles / disks within which closed-loop eigenvalues are forbidden.
struct ExclusionGeometry {
  double re_min = 0.0;  // -||B||; box is [re_min, 0) x [im_min, im_max]
  double im_min = 0.0;
  double im_max = 0.0;
  std::vector<Triangle> triangles;
  std::vector<cxd> disk_centers;   // i lambda_k
  std::vector<double> disk_radii;  // rho_k, or rho^1_k when m = 1
  double tol = 0.0;  // 1e-7 * max(1, ||B||, Delta)
};

struct RegionVerdict {
  cxd eigenvalue;
  std::vector<std::string> violations;  // empty when the eigenvalue is fine
  bool ok() const { return violations.empty(); }
};

struct BandSplit {
  bool applicable = false;  // sigma_m > 2 sqrt(2) Delta
  double inner_lo = 0.0, inner_hi = 0.0;  // closed [inner_lo, inner_hi]
  double outer_lo = 0.0, outer_hi = 0.0;  // open (outer_lo, outer_hi)
  std::size_t inner_count = 0;            // m
  std::size_t outer_count = 0;            // n - m
};

struct UpperBounds {
  double b_norm = 0.0;                          // always valid
  std::optional<double> sqrt3_delta;            // sigma_m > 2 sqrt(2) Delta, m < n
  std::optional<double> two_sqrt2_delta;        // m = 1
};

struct RoucheDisk {
  cxd center;          // z_k = -||b_k|| + i lambda_k
  double radius = 0.0; // r_k
  bool applicable = false;
};

struct GammaBrackets {
  std::vector<double> phi_k;
  std::optional<double> gamma_minus;  // defined iff all phi_k < 1
  std::optional<double> gamma_plus;   // defined iff some phi_k < 1
};

struct Sigma0Mu {
  double sigma0 = 0.0;
  double mu = 0.0;
};

/// Everything the theory says about one system's decay rate.
struct BoundReport {
  double ell_est = 0.0;
  std::optional<double> ell_est1;  // m = 1 only
  std::vector<double> rho_k;
  std::optional<std::vector<double>> rho1_k;  // m = 1 only
  std::vector<double> phi_k;
  std::optional<double> Gamma_minus;
  std::optional<double> Gamma_plus;
  std::optional<double> rho;  // half-plane bound, m >= 2
  double upper_B_norm = 0.0;
  std::optional<double> upper_sqrt3Delta;
  std::optional<double> upper_m1;
  std::vector<RoucheDisk> rouche_disks;
  BandSplit band_split_info;
  double best_lower = 0.0;
  double best_upper = 0.0;
};

/// Exclusion-disk radii rho_k (and the larger m = 1 radii rho^1_k).
std::vector<double> rho_radii(const SpectralData& data);
std::vector<double> rho1_radii(const SpectralData& data);

/// (ell_est, ell_est^1): the guaranteed strict lower bounds on the decay
/// rate; both zero when eigenvalues coincide. ell_est^1 only for m = 1.
std::pair<double, std::optional<double>> ell_est_bounds(
    const SpectralData& data);

ExclusionGeometry exclusion_geometry(const SpectralData& data);

/// Checks each computed closed-loop eigenvalue against the exclusion
/// geometry; violations are returned as data, never thrown.
std::vector<RegionVerdict> check_spectrum_in_region(
    const std::vector<cxd>& eigs, const ExclusionGeometry& geom);

BandSplit band_split(const SpectralData& data);

UpperBounds decay_upper_bounds(const SpectralData& data);

/// Per-eigenvalue localization disks, each containing exactly one
/// closed-loop eigenvalue when its separation condition holds.
std::vector<RoucheDisk> rouche_disks(const SpectralData& data);

GammaBrackets gamma_brackets(const SpectralData& data);

/// sigma_0(theta): the maximizer of f(s) = (s - theta) / (s + ... + s^{m+1})
/// on (theta, inf), found as the root of the decreasing polynomial P; and
/// mu = f(sigma_0).
Sigma0Mu sigma0_mu(double theta, std::size_t m);

/// The half-plane bound rho of the Delta_m estimate (2 <= m < n); absent
/// when the hypotheses fail.
std::optional<double> rho_bound(const SpectralData& data);

/// Near-optimal control matrix built from the first m columns of the scaled
/// DFT matrix, expressed in the eigenbasis V; ||b_j|| = beta sqrt(m/n) for
/// every mode.
ComplexMatrix suboptimal_B(const ComplexMatrix& v, std::size_t m, double beta);

/// Hypothesis of the half-supremum guarantee for suboptimal_B.
bool suboptimal_B_condition(double delta, std::size_t n, std::size_t m,
                           double beta);

/// Aggregates every bound; best_lower / best_upper are the tightest
/// available sides.
BoundReport summarize(const SpectralData& data);

/// Plain-text plot script: one primitive per line,
///   circle cx cy r | segment x1 y1 x2 y2 | point x y label
std::string plot_script(const ExclusionGeometry& geom,
                        const std::vector<cxd>& eigs = {});

}  // namespace lqrdecay

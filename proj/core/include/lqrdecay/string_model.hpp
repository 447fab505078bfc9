#pragma once

#include <cstddef>
#include <vector>

#include "lqrdecay/riccati.hpp"
#include "lqrdecay/spectral.hpp"

namespace lqrdecay {

/// Mass-loaded string benchmark: N equal point masses on a taut massless
/// string, actuators at the masses listed in J (1-based, strictly
/// increasing).
struct StringConfig {
  std::size_t N = 0;
  std::size_t m = 0;
  double tau_over_h = 0.0;  // tension / spacing
  double mass = 0.0;        // M
  std::vector<std::size_t> J;
};

void validate(const StringConfig& cfg, bool require_indices = true);

/// The 2N-state control system in energy-orthonormal coordinates, where the
/// standard inner product reproduces the energy inner product and A becomes
/// skew-Hermitian.
struct StringSystem {
  SystemSpec sys;            // transformed A, B with Q = R = I
  ComplexMatrix A_raw;       // block form [[0, I], [-(tau/hM) A0, 0]]
  ComplexMatrix B_raw;       // (1/M) [0; e_{j1} ... e_{jm}]
  ComplexMatrix gram;        // G of the energy inner product, G = L L*
  ComplexMatrix cholesky_L;
  SpectralData closed_form;  // spectral data from the sine formulas, no
                             // eigensolve (V left empty)
};

StringSystem build_string(const StringConfig& cfg);

/// Spectral data (lambda list, ||b_k||, ||B||, gaps) straight from the
/// closed-form expressions in O(N m). Matches decompose() on the built
/// system to 1e-8; this is what makes bound evaluation per configuration
/// cheap during the search.
SpectralData closed_form_bounds(const StringConfig& cfg);

/// Closed-form eigenvector for mode index k in {-N..N}\{0}, expressed in the
/// raw (untransformed) coordinates and E-normalized.
std::vector<cxd> closed_form_eigenvector(const StringConfig& cfg, int k);

double closed_form_lambda(const StringConfig& cfg, int k);

}  // namespace lqrdecay

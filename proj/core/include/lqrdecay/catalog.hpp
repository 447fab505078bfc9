#pragma once

#include <vector>

#include "lqrdecay/riccati.hpp"
#include "lqrdecay/string_model.hpp"

namespace lqrdecay::catalog {

/// The 4-state / 2-control family A = i diag(-b, -a, a, b) with the two
/// interleaved actuator columns; rows of the benchmark table pass (a, b).
SystemSpec four_mode_system(double a, double b);

struct TableRow {
  double a, b;
};

/// (a, b) pairs of the seven benchmark rows.
std::vector<TableRow> four_mode_rows();

/// 11-state ladder A = i diag(-5..5) with a single all-ones actuator column;
/// the shifted-feedback cost experiment runs on this system.
SystemSpec uniform_ladder_system();

/// Non-skew-Hermitian 2x2 demonstration pair with spectrum {-i, i}: the
/// ||B|| upper bound fails for large t.
SystemSpec nonskew_pair2(double t);

/// Non-skew-Hermitian 3x3 demonstration pair with spectrum {-i, 0, i}: the
/// spectral lower bound fails for large t.
SystemSpec nonskew_pair3(double t);

/// N = 30, tau/h = 10, M = 50 string template (J left empty).
StringConfig string_benchmark(std::size_t m);

}  // namespace lqrdecay::catalog

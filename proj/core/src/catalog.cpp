#include "lqrdecay/catalog.hpp"

#include <string>

namespace lqrdecay::catalog {

SystemSpec four_mode_system(double a, double b) {
  const ComplexMatrix amat = ComplexMatrix::diagonal(
      {cxd{0.0, -b}, cxd{0.0, -a}, cxd{0.0, a}, cxd{0.0, b}});
  ComplexMatrix bmat(4, 2);
  bmat(0, 0) = 1.0;
  bmat(1, 1) = 1.0;
  bmat(2, 0) = 1.0;
  bmat(3, 1) = 1.0;
  return make_system(amat, bmat, {}, {},
                     "four-mode a=" + std::to_string(a) +
                         " b=" + std::to_string(b));
}

std::vector<TableRow> four_mode_rows() {
  return {{15.0, 45.0}, {5.0, 15.0},  {1.8, 5.4},  {1.0, 10.0},
          {4.0, 4.1},   {0.2, 0.22},  {0.1, 0.11}};
}

SystemSpec uniform_ladder_system() {
  std::vector<cxd> diag(11);
  for (int k = 0; k < 11; ++k) diag[k] = cxd{0.0, static_cast<double>(k - 5)};
  ComplexMatrix b(11, 1);
  for (std::size_t i = 0; i < 11; ++i) b(i, 0) = 1.0;
  return make_system(ComplexMatrix::diagonal(diag), b, {}, {},
                     "ladder i*diag(-5..5)");
}

SystemSpec nonskew_pair2(double t) {
  ComplexMatrix a(2, 2);
  a(0, 0) = cxd{0.0, -1.0};
  a(0, 1) = cxd{0.0, t};
  a(1, 1) = cxd{0.0, 1.0};
  ComplexMatrix b(2, 1);
  b(0, 0) = 1.0;
  b(1, 0) = 1.0;
  return make_system(a, b, {}, {}, "nonskew-2 t=" + std::to_string(t));
}

SystemSpec nonskew_pair3(double t) {
  ComplexMatrix a(3, 3);
  a(0, 0) = cxd{0.0, -1.0};
  a(0, 1) = cxd{0.0, t};
  a(1, 1) = cxd{0.0, 1.0};
  // third state is decoupled with eigenvalue 0
  ComplexMatrix b(3, 1);
  b(0, 0) = 1.0;
  b(1, 0) = 1.0;
  b(2, 0) = 1.0;
  return make_system(a, b, {}, {}, "nonskew-3 t=" + std::to_string(t));
}

StringConfig string_benchmark(std::size_t m) {
  StringConfig cfg;
  cfg.N = 30;
  cfg.m = m;
  cfg.tau_over_h = 10.0;
  cfg.mass = 50.0;
  return cfg;
}

}  // namespace lqrdecay::catalog

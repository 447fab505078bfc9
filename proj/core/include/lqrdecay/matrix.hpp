#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

#include "lqrdecay/errors.hpp"

namespace lqrdecay {

using cxd = std::complex<double>;

/// Dense complex matrix with value semantics, stored row-major.
/// All higher-level types (system matrices, Riccati solutions, the
/// rational function values) are carried by this one class.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, cxd{0.0, 0.0}) {}

  /// Builds from nested initializer lists and rejects NaN/Inf entries.
  static ComplexMatrix from_rows(
      std::initializer_list<std::initializer_list<cxd>> rows);
  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix diagonal(const std::vector<cxd>& d);
  static ComplexMatrix column(const std::vector<cxd>& v);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }
  std::size_t size() const { return data_.size(); }

  cxd& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const cxd& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  const std::vector<cxd>& data() const { return data_; }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;

  ComplexMatrix block(std::size_t r0, std::size_t c0, std::size_t nr,
                      std::size_t nc) const;
  void set_block(std::size_t r0, std::size_t c0, const ComplexMatrix& m);
  std::vector<cxd> col_vector(std::size_t j) const;
  std::vector<cxd> row_vector(std::size_t i) const;

  ComplexMatrix& operator+=(const ComplexMatrix& other);
  ComplexMatrix& operator-=(const ComplexMatrix& other);
  ComplexMatrix& operator*=(cxd s);

  double frobenius_norm() const;
  double max_abs() const;
  cxd trace() const;
  bool all_finite() const;

  /// ||M - M*||_F, zero for Hermitian matrices.
  double hermitian_defect() const;
  /// ||M + M*||_F, zero for skew-Hermitian matrices.
  double skew_hermitian_defect() const;

  void require_square(const char* what) const;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<cxd> data_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cxd s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, cxd s);
ComplexMatrix operator-(ComplexMatrix a);

std::vector<cxd> operator*(const ComplexMatrix& a, const std::vector<cxd>& x);

double vector_norm(const std::vector<cxd>& v);
cxd vector_dot(const std::vector<cxd>& a, const std::vector<cxd>& b);

}  // namespace lqrdecay

#include "lqrdecay/matrix.hpp"

#include <cmath>
#include <limits>

namespace lqrdecay {

ComplexMatrix ComplexMatrix::from_rows(
    std::initializer_list<std::initializer_list<cxd>> rows) {
  const std::size_t nr = rows.size();
  const std::size_t nc = nr == 0 ? 0 : rows.begin()->size();
  ComplexMatrix m(nr, nc);
  std::size_t i = 0;
  for (const auto& row : rows) {
    if (row.size() != nc) {
      throw PreconditionError("from_rows: ragged row lengths");
    }
    std::size_t j = 0;
    for (const auto& v : row) {
      m(i, j++) = v;
    }
    ++i;
  }
  if (!m.all_finite()) {
    throw PreconditionError("from_rows: non-finite entry");
  }
  return m;
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(const std::vector<cxd>& d) {
  ComplexMatrix m(d.size(), d.size());
  for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
  return m;
}

ComplexMatrix ComplexMatrix::column(const std::vector<cxd>& v) {
  ComplexMatrix m(v.size(), 1);
  for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = v[i];
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m(rows_, cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) m(i, j) = std::conj((*this)(i, j));
  return m;
}

ComplexMatrix ComplexMatrix::block(std::size_t r0, std::size_t c0,
                                   std::size_t nr, std::size_t nc) const {
  if (r0 + nr > rows_ || c0 + nc > cols_) {
    throw PreconditionError("block: out of range");
  }
  ComplexMatrix m(nr, nc);
  for (std::size_t i = 0; i < nr; ++i)
    for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
  return m;
}

void ComplexMatrix::set_block(std::size_t r0, std::size_t c0,
                              const ComplexMatrix& m) {
  if (r0 + m.rows() > rows_ || c0 + m.cols() > cols_) {
    throw PreconditionError("set_block: out of range");
  }
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      (*this)(r0 + i, c0 + j) = m(i, j);
}

std::vector<cxd> ComplexMatrix::col_vector(std::size_t j) const {
  std::vector<cxd> v(rows_);
  for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
  return v;
}

std::vector<cxd> ComplexMatrix::row_vector(std::size_t i) const {
  std::vector<cxd> v(cols_);
  for (std::size_t j = 0; j < cols_; ++j) v[j] = (*this)(i, j);
  return v;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw PreconditionError("operator+=: dimension mismatch");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
  if (rows_ != other.rows_ || cols_ != other.cols_) {
    throw PreconditionError("operator-=: dimension mismatch");
  }
  for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cxd s) {
  for (auto& v : data_) v *= s;
  return *this;
}

double ComplexMatrix::frobenius_norm() const {
  double acc = 0.0;
  for (const auto& v : data_) acc += std::norm(v);
  return std::sqrt(acc);
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& v : data_) m = std::max(m, std::abs(v));
  return m;
}

cxd ComplexMatrix::trace() const {
  require_square("trace");
  cxd t = 0.0;
  for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
  return t;
}

bool ComplexMatrix::all_finite() const {
  for (const auto& v : data_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
  }
  return true;
}

double ComplexMatrix::hermitian_defect() const {
  require_square("hermitian_defect");
  double acc = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      acc += std::norm((*this)(i, j) - std::conj((*this)(j, i)));
  return std::sqrt(acc);
}

double ComplexMatrix::skew_hermitian_defect() const {
  require_square("skew_hermitian_defect");
  double acc = 0.0;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      acc += std::norm((*this)(i, j) + std::conj((*this)(j, i)));
  return std::sqrt(acc);
}

void ComplexMatrix::require_square(const char* what) const {
  if (rows_ != cols_) {
    throw PreconditionError(std::string(what) + ": matrix is not square");
  }
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) {
  a += b;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) {
  a -= b;
  return a;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows()) {
    throw PreconditionError("operator*: dimension mismatch");
  }
  ComplexMatrix c(a.rows(), b.cols());
  // i-k-j order keeps the inner loop contiguous in both b and c.
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const cxd aik = a(i, k);
      if (aik == cxd{0.0, 0.0}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) {
        c(i, j) += aik * b(k, j);
      }
    }
  }
  return c;
}

ComplexMatrix operator*(cxd s, ComplexMatrix a) {
  a *= s;
  return a;
}

ComplexMatrix operator*(ComplexMatrix a, cxd s) {
  a *= s;
  return a;
}

ComplexMatrix operator-(ComplexMatrix a) {
  a *= cxd{-1.0, 0.0};
  return a;
}

std::vector<cxd> operator*(const ComplexMatrix& a, const std::vector<cxd>& x) {
  if (a.cols() != x.size()) {
    throw PreconditionError("matrix-vector product: dimension mismatch");
  }
  std::vector<cxd> y(a.rows(), cxd{0.0, 0.0});
  for (std::size_t i = 0; i < a.rows(); ++i) {
    cxd acc = 0.0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc += a(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

double vector_norm(const std::vector<cxd>& v) {
  double acc = 0.0;
  for (const auto& z : v) acc += std::norm(z);
  return std::sqrt(acc);
}

cxd vector_dot(const std::vector<cxd>& a, const std::vector<cxd>& b) {
  if (a.size() != b.size()) {
    throw PreconditionError("vector_dot: dimension mismatch");
  }
  cxd acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

}  // namespace lqrdecay

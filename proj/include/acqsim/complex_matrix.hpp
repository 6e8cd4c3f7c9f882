#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace acqsim {

using cplx = std::complex<double>;

// Dense complex matrix, row-major, value semantics. Products route through
// the runtime-dispatched kernels.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(std::size_t(rows) * cols) {}

  static ComplexMatrix identity(int n);
  static ComplexMatrix zero(int n) { return ComplexMatrix(n, n); }

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  cplx& operator()(int i, int j) { return data_[std::size_t(i) * cols_ + j]; }
  const cplx& operator()(int i, int j) const { return data_[std::size_t(i) * cols_ + j]; }

  cplx* data() { return data_.data(); }
  const cplx* data() const { return data_.data(); }
  std::size_t size() const { return data_.size(); }

  ComplexMatrix dagger() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conj() const;
  cplx trace() const;

  double max_abs() const;                 // max entry magnitude
  double frobenius_norm() const;
  bool is_hermitian(double tol) const;    // max|A - A^dag| <= tol

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(cplx scalar);

  friend ComplexMatrix operator+(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs += rhs; }
  friend ComplexMatrix operator-(ComplexMatrix lhs, const ComplexMatrix& rhs) { return lhs -= rhs; }
  friend ComplexMatrix operator*(ComplexMatrix lhs, cplx scalar) { return lhs *= scalar; }
  friend ComplexMatrix operator*(cplx scalar, ComplexMatrix rhs) { return rhs *= scalar; }

  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<cplx> data_;
};

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix anticommutator(const ComplexMatrix& a, const ComplexMatrix& b);

// tr(a * b) without forming the product
cplx trace_of_product(const ComplexMatrix& a, const ComplexMatrix& b);

double max_abs_difference(const ComplexMatrix& a, const ComplexMatrix& b);

}  // namespace acqsim

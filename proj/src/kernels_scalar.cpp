#include "acqsim/kernels.hpp"

#include <algorithm>
#include <cmath>

namespace acqsim::kernels {

namespace {

void cgemm_scalar(cplx* c, const cplx* a, const cplx* b, int m, int n, int k) {
  for (int i = 0; i < m; ++i) {
    cplx* crow = c + std::size_t(i) * n;
    std::fill(crow, crow + n, cplx(0.0));
    for (int l = 0; l < k; ++l) {
      const cplx aik = a[std::size_t(i) * k + l];
      if (aik == cplx(0.0)) continue;
      const cplx* brow = b + std::size_t(l) * n;
      for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

void cgemm_acc_scalar(cplx* c, const cplx* a, const cplx* b, int m, int n, int k) {
  for (int i = 0; i < m; ++i) {
    cplx* crow = c + std::size_t(i) * n;
    for (int l = 0; l < k; ++l) {
      const cplx aik = a[std::size_t(i) * k + l];
      if (aik == cplx(0.0)) continue;
      const cplx* brow = b + std::size_t(l) * n;
      for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
}

void axpy_scalar(double* y, double alpha, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void sub_inplace_scalar(double* y, const double* x, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] -= x[i];
}

double wrms_norm_scalar(const double* err, const double* y0, const double* y1, double atol,
                        double rtol, std::size_t n) {
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double q = err[i] / sc;
    acc += q * q;
  }
  return std::sqrt(acc / double(n));
}

}  // namespace

const KernelOps& scalar_kernels() {
  static const KernelOps ops{"scalar",           cgemm_scalar,      cgemm_acc_scalar,
                             axpy_scalar,        sub_inplace_scalar, wrms_norm_scalar};
  return ops;
}

}  // namespace acqsim::kernels

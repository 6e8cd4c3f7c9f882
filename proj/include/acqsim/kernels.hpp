#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace acqsim::kernels {

using cplx = std::complex<double>;

// Data-parallel inner loops of the simulator, behind a runtime-selected
// dispatch table. Matrices are dense, row-major, contiguous. The scalar
// table is the reference implementation; SIMD variants must agree with it
// to floating-point reassociation accuracy (equivalence-tested).
struct KernelOps {
  const char* name;

  // C = A(m x k) * B(k x n)
  void (*cgemm)(cplx* c, const cplx* a, const cplx* b, int m, int n, int k);
  // C += A(m x k) * B(k x n)
  void (*cgemm_acc)(cplx* c, const cplx* a, const cplx* b, int m, int n, int k);
  // y += alpha * x over n doubles (complex arrays are passed as 2n doubles)
  void (*axpy)(double* y, double alpha, const double* x, std::size_t n);
  // y -= x over n doubles
  void (*sub_inplace)(double* y, const double* x, std::size_t n);
  // RMS of err_i / (atol + rtol*max(|y0_i|, |y1_i|)) over n doubles
  double (*wrms_norm)(const double* err, const double* y0, const double* y1,
                      double atol, double rtol, std::size_t n);
};

const KernelOps& scalar_kernels();

// All tables compiled into this binary and usable on this CPU.
std::vector<const KernelOps*> available_kernels();

// Table selected at first use: ACQSIM_KERNELS=<name> overrides, otherwise the
// widest SIMD variant the CPU supports. Stable for the process lifetime.
const KernelOps& active_kernels();

}  // namespace acqsim::kernels

// AVX2+FMA kernel table. Compiled with -mavx2 -mfma on x86-64; collapses to a
// null table elsewhere so the dispatcher can fall back to scalar.

#include "kernels_detail.hpp"

#if defined(__x86_64__) && defined(__AVX2__) && defined(__FMA__)

#include <immintrin.h>

#include <algorithm>
#include <cmath>

namespace acqsim::kernels {
namespace {

// acc += a_scalar * b for interleaved complex pairs:
//   t2 = ai * swap(b); acc += fmaddsub(ar, b, t2)
inline __m256d cmac(__m256d acc, __m256d ar, __m256d ai, __m256d b) {
  const __m256d bswap = _mm256_permute_pd(b, 0x5);
  const __m256d t2 = _mm256_mul_pd(ai, bswap);
  return _mm256_add_pd(acc, _mm256_fmaddsub_pd(ar, b, t2));
}

template <bool Accumulate>
void cgemm_impl(cplx* c, const cplx* a, const cplx* b, int m, int n, int k) {
  const double* ad = reinterpret_cast<const double*>(a);
  const double* bd = reinterpret_cast<const double*>(b);
  double* cd = reinterpret_cast<double*>(c);
  const int nvec = n / 2;          // full __m256d vectors per row (2 complex each)
  const int jtail = nvec * 2;      // first complex column handled by scalar tail

  for (int i = 0; i < m; ++i) {
    double* crow = cd + std::size_t(i) * n * 2;
    // 8-complex blocks held in registers across the k loop
    int jb = 0;
    for (; jb + 4 <= nvec; jb += 4) {
      __m256d acc0, acc1, acc2, acc3;
      if constexpr (Accumulate) {
        acc0 = _mm256_loadu_pd(crow + jb * 4);
        acc1 = _mm256_loadu_pd(crow + jb * 4 + 4);
        acc2 = _mm256_loadu_pd(crow + jb * 4 + 8);
        acc3 = _mm256_loadu_pd(crow + jb * 4 + 12);
      } else {
        acc0 = acc1 = acc2 = acc3 = _mm256_setzero_pd();
      }
      const double* ap = ad + std::size_t(i) * k * 2;
      for (int l = 0; l < k; ++l, ap += 2) {
        if (ap[0] == 0.0 && ap[1] == 0.0) continue;
        const __m256d ar = _mm256_broadcast_sd(ap);
        const __m256d ai = _mm256_broadcast_sd(ap + 1);
        const double* brow = bd + std::size_t(l) * n * 2 + jb * 4;
        acc0 = cmac(acc0, ar, ai, _mm256_loadu_pd(brow));
        acc1 = cmac(acc1, ar, ai, _mm256_loadu_pd(brow + 4));
        acc2 = cmac(acc2, ar, ai, _mm256_loadu_pd(brow + 8));
        acc3 = cmac(acc3, ar, ai, _mm256_loadu_pd(brow + 12));
      }
      _mm256_storeu_pd(crow + jb * 4, acc0);
      _mm256_storeu_pd(crow + jb * 4 + 4, acc1);
      _mm256_storeu_pd(crow + jb * 4 + 8, acc2);
      _mm256_storeu_pd(crow + jb * 4 + 12, acc3);
    }
    for (; jb < nvec; ++jb) {
      __m256d acc =
          Accumulate ? _mm256_loadu_pd(crow + jb * 4) : _mm256_setzero_pd();
      const double* ap = ad + std::size_t(i) * k * 2;
      for (int l = 0; l < k; ++l, ap += 2) {
        if (ap[0] == 0.0 && ap[1] == 0.0) continue;
        const __m256d ar = _mm256_broadcast_sd(ap);
        const __m256d ai = _mm256_broadcast_sd(ap + 1);
        acc = cmac(acc, ar, ai, _mm256_loadu_pd(bd + std::size_t(l) * n * 2 + jb * 4));
      }
      _mm256_storeu_pd(crow + jb * 4, acc);
    }
    for (int j = jtail; j < n; ++j) {
      cplx sum = Accumulate ? c[std::size_t(i) * n + j] : cplx(0.0);
      for (int l = 0; l < k; ++l) {
        const cplx aik = a[std::size_t(i) * k + l];
        if (aik == cplx(0.0)) continue;
        sum += aik * b[std::size_t(l) * n + j];
      }
      c[std::size_t(i) * n + j] = sum;
    }
  }
}

void cgemm_avx2(cplx* c, const cplx* a, const cplx* b, int m, int n, int k) {
  cgemm_impl<false>(c, a, b, m, n, k);
}

void cgemm_acc_avx2(cplx* c, const cplx* a, const cplx* b, int m, int n, int k) {
  cgemm_impl<true>(c, a, b, m, n, k);
}

void axpy_avx2(double* y, double alpha, const double* x, std::size_t n) {
  const __m256d av = _mm256_set1_pd(alpha);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
    _mm256_storeu_pd(y + i + 4,
                     _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i + 4), _mm256_loadu_pd(y + i + 4)));
  }
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_fmadd_pd(av, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i)));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

void sub_inplace_avx2(double* y, const double* x, std::size_t n) {
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    _mm256_storeu_pd(y + i, _mm256_sub_pd(_mm256_loadu_pd(y + i), _mm256_loadu_pd(x + i)));
  }
  for (; i < n; ++i) y[i] -= x[i];
}

double wrms_norm_avx2(const double* err, const double* y0, const double* y1, double atol,
                      double rtol, std::size_t n) {
  const __m256d va = _mm256_set1_pd(atol);
  const __m256d vr = _mm256_set1_pd(rtol);
  const __m256d sign_mask = _mm256_set1_pd(-0.0);
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a0 = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(y0 + i));
    const __m256d a1 = _mm256_andnot_pd(sign_mask, _mm256_loadu_pd(y1 + i));
    const __m256d sc = _mm256_fmadd_pd(vr, _mm256_max_pd(a0, a1), va);
    const __m256d q = _mm256_div_pd(_mm256_loadu_pd(err + i), sc);
    acc = _mm256_fmadd_pd(q, q, acc);
  }
  double buf[4];
  _mm256_storeu_pd(buf, acc);
  double total = buf[0] + buf[1] + buf[2] + buf[3];
  for (; i < n; ++i) {
    const double sc = atol + rtol * std::max(std::abs(y0[i]), std::abs(y1[i]));
    const double q = err[i] / sc;
    total += q * q;
  }
  return std::sqrt(total / double(n));
}

const KernelOps avx2_ops{"avx2",    cgemm_avx2,       cgemm_acc_avx2,
                         axpy_avx2, sub_inplace_avx2, wrms_norm_avx2};

}  // namespace

namespace detail {
const KernelOps* avx2_kernels_or_null() { return &avx2_ops; }
bool cpu_supports_avx2_fma() {
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
}  // namespace detail

}  // namespace acqsim::kernels

#else  // no AVX2 at build time

namespace acqsim::kernels::detail {
const KernelOps* avx2_kernels_or_null() { return nullptr; }
bool cpu_supports_avx2_fma() { return false; }
}  // namespace acqsim::kernels::detail

#endif

#include "acqsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace acqsim {

namespace {

double offdiag_norm(const ComplexMatrix& a) {
  double acc = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) acc += std::norm(a(i, j));
  return std::sqrt(acc);
}

}  // namespace

EigenDecomposition hermitian_eigs(const ComplexMatrix& input) {
  if (!input.square()) throw std::invalid_argument("hermitian_eigs: matrix not square");
  const int n = input.rows();

  // symmetrize away roundoff before iterating
  ComplexMatrix a(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));

  ComplexMatrix v = ComplexMatrix::identity(n);
  const double scale = std::max(a.max_abs(), 1e-300);
  const double tol = 1e-14 * scale * n;

  int sweep = 0;
  for (; sweep < 100 && offdiag_norm(a) > tol; ++sweep) {
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const cplx apq = a(p, q);
        const double mag = std::abs(apq);
        if (mag <= tol / (n * n)) continue;
        const double app = a(p, p).real();
        const double aqq = a(q, q).real();
        const cplx phase = apq / mag;  // e^{i phi}
        const double theta = (aqq - app) / (2.0 * mag);
        const double t = (theta >= 0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const cplx sp = s * phase;             // s e^{i phi}
        const cplx spc = s * std::conj(phase); // s e^{-i phi}

        for (int i = 0; i < n; ++i) {  // A <- A U
          const cplx aip = a(i, p), aiq = a(i, q);
          a(i, p) = c * aip - spc * aiq;
          a(i, q) = sp * aip + c * aiq;
        }
        for (int j = 0; j < n; ++j) {  // A <- U^dag A
          const cplx apj = a(p, j), aqj = a(q, j);
          a(p, j) = c * apj - sp * aqj;
          a(q, j) = spc * apj + c * aqj;
        }
        for (int i = 0; i < n; ++i) {  // V <- V U
          const cplx vip = v(i, p), viq = v(i, q);
          v(i, p) = c * vip - spc * viq;
          v(i, q) = sp * vip + c * viq;
        }
      }
    }
  }

  if (sweep == 100 && offdiag_norm(a) > tol)
    throw std::runtime_error("hermitian_eigs: Jacobi iteration failed to converge");

  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int i, int j) { return a(i, i).real() < a(j, j).real(); });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = ComplexMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    out.eigenvalues[k] = a(order[k], order[k]).real();
    for (int i = 0; i < n; ++i) out.eigenvectors(i, k) = v(i, order[k]);
  }
  return out;
}

double min_eigenvalue_hermitian(const ComplexMatrix& a) {
  return hermitian_eigs(a).eigenvalues.front();
}

ComplexMatrix expm_antihermitian(const ComplexMatrix& x) {
  if (!x.square()) throw std::invalid_argument("expm_antihermitian: matrix not square");
  const int n = x.rows();
  // M = iX must be hermitian
  ComplexMatrix m(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) m(i, j) = cplx(0.0, 1.0) * x(i, j);
  const double scale = std::max(m.max_abs(), 1e-300);
  if (!m.is_hermitian(1e-12 * scale * n))
    throw std::invalid_argument("expm_antihermitian: input not anti-hermitian");

  const EigenDecomposition eig = hermitian_eigs(m);
  // exp(X) = exp(-iM) = V diag(e^{-i lambda}) V^dag
  ComplexMatrix scaled = eig.eigenvectors;
  for (int k = 0; k < n; ++k) {
    const cplx f = std::exp(cplx(0.0, -eig.eigenvalues[k]));
    for (int i = 0; i < n; ++i) scaled(i, k) *= f;
  }
  return scaled * eig.eigenvectors.dagger();
}

}  // namespace acqsim

#pragma once

#include <vector>

#include "acqsim/complex_matrix.hpp"

namespace acqsim {

struct EigenDecomposition {
  std::vector<double> eigenvalues;  // ascending
  ComplexMatrix eigenvectors;       // columns, orthonormal
};

// Cyclic Jacobi for hermitian matrices. Ample for the d <= 32 spaces here.
EigenDecomposition hermitian_eigs(const ComplexMatrix& a);

double min_eigenvalue_hermitian(const ComplexMatrix& a);

// exp(X) for anti-hermitian X (iX hermitian), via eigendecomposition.
// The result is unitary to machine precision.
ComplexMatrix expm_antihermitian(const ComplexMatrix& x);

}  // namespace acqsim

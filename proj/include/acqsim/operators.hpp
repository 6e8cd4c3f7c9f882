#pragma once

#include <set>

#include "acqsim/complex_matrix.hpp"
#include "acqsim/system.hpp"

namespace acqsim {

enum class OperatorTag { hermitian, general };

// A d x d operator on the tensor-product space. Hermitian-tagged operators
// are checked at construction: max|A - A^dag| < 1e-12 * max|A|.
class OperatorMatrix {
 public:
  OperatorMatrix() = default;
  OperatorMatrix(ComplexMatrix m, OperatorTag tag);

  static OperatorMatrix hermitian(ComplexMatrix m) {
    return OperatorMatrix(std::move(m), OperatorTag::hermitian);
  }
  static OperatorMatrix general(ComplexMatrix m) {
    return OperatorMatrix(std::move(m), OperatorTag::general);
  }

  const ComplexMatrix& matrix() const { return mat_; }
  OperatorTag tag() const { return tag_; }
  int dim() const { return mat_.rows(); }

 private:
  ComplexMatrix mat_;
  OperatorTag tag_ = OperatorTag::general;
};

// Density matrix with construction-time contracts: hermitian to 1e-10,
// unit trace to 1e-10, eigenvalues >= -1e-10.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix rho);

  const ComplexMatrix& matrix() const { return rho_; }
  int dim() const { return rho_.rows(); }

 private:
  ComplexMatrix rho_;
};

// I x ... x sigma x ... x I for a qubit (sigma = |g><e|), or I x ... x a for
// the cavity (last index), a|n> = sqrt(n)|n-1> on the truncated ladder.
OperatorMatrix lowering_operator(const SpaceLayout& layout, int subsystem_index);

// Number operator sigma^dag sigma (qubit) or a^dag a (cavity), embedded.
OperatorMatrix number_operator(const SpaceLayout& layout, int subsystem_index);

OperatorMatrix identity_operator(const SpaceLayout& layout);

// Pure product state: listed qubits (0-based) in |e>, the rest in |g>,
// cavity in |0>.
DensityMatrix initial_state(const SpaceLayout& layout, const std::set<int>& excited_qubits);

// tr(rho * op)
cplx expectation(const DensityMatrix& rho, const OperatorMatrix& op);
cplx expectation(const ComplexMatrix& rho, const OperatorMatrix& op);

// Real part of tr(rho * op) for a hermitian-tagged op; asserts the imaginary
// residue is below 1e-10 * scale.
double expectation_real(const DensityMatrix& rho, const OperatorMatrix& op);

}  // namespace acqsim

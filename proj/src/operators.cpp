#include "acqsim/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "acqsim/linalg.hpp"

namespace acqsim {

OperatorMatrix::OperatorMatrix(ComplexMatrix m, OperatorTag tag) : mat_(std::move(m)), tag_(tag) {
  if (!mat_.square()) throw std::invalid_argument("OperatorMatrix: matrix not square");
  if (tag_ == OperatorTag::hermitian) {
    const double scale = mat_.max_abs();
    if (scale > 0.0 && !mat_.is_hermitian(1e-12 * scale))
      throw std::invalid_argument("OperatorMatrix: hermitian tag on non-hermitian matrix");
  }
}

DensityMatrix::DensityMatrix(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (!rho_.square()) throw std::invalid_argument("DensityMatrix: matrix not square");
  const cplx tr = rho_.trace();
  if (std::abs(tr - cplx(1.0)) > 1e-10)
    throw std::invalid_argument("DensityMatrix: trace deviates from 1 beyond 1e-10");
  const double scale = std::abs(tr);
  for (int i = 0; i < rho_.rows(); ++i) {
    for (int j = i; j < rho_.cols(); ++j) {
      if (std::abs(rho_(i, j) - std::conj(rho_(j, i))) > 1e-10 * scale)
        throw std::invalid_argument("DensityMatrix: not hermitian to 1e-10");
    }
  }
  if (min_eigenvalue_hermitian(rho_) < -1e-10)
    throw std::invalid_argument("DensityMatrix: negative eigenvalue beyond -1e-10");
}

namespace {

ComplexMatrix qubit_sigma() {
  ComplexMatrix s(2, 2);
  s(0, 1) = 1.0;  // |g><e|
  return s;
}

ComplexMatrix cavity_lowering(int levels) {
  ComplexMatrix a(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

ComplexMatrix embed(const SpaceLayout& layout, int subsystem, const ComplexMatrix& local) {
  ComplexMatrix out = ComplexMatrix::identity(1);
  for (int k = 0; k < layout.subsystem_count(); ++k) {
    out = (k == subsystem) ? kron(out, local)
                           : kron(out, ComplexMatrix::identity(layout.dims[k]));
  }
  return out;
}

}  // namespace

OperatorMatrix lowering_operator(const SpaceLayout& layout, int subsystem_index) {
  if (subsystem_index < 0 || subsystem_index >= layout.subsystem_count())
    throw std::invalid_argument("lowering_operator: subsystem index out of range");
  const bool is_cavity = layout.has_cavity && subsystem_index == layout.cavity_index();
  const ComplexMatrix local =
      is_cavity ? cavity_lowering(layout.dims[subsystem_index]) : qubit_sigma();
  return OperatorMatrix::general(embed(layout, subsystem_index, local));
}

OperatorMatrix number_operator(const SpaceLayout& layout, int subsystem_index) {
  if (subsystem_index < 0 || subsystem_index >= layout.subsystem_count())
    throw std::invalid_argument("number_operator: subsystem index out of range");
  const int levels = layout.dims[subsystem_index];
  ComplexMatrix local(levels, levels);
  for (int n = 0; n < levels; ++n) local(n, n) = double(n);
  return OperatorMatrix::hermitian(embed(layout, subsystem_index, local));
}

OperatorMatrix identity_operator(const SpaceLayout& layout) {
  return OperatorMatrix::hermitian(ComplexMatrix::identity(layout.total_dim));
}

DensityMatrix initial_state(const SpaceLayout& layout, const std::set<int>& excited_qubits) {
  std::vector<int> levels(layout.subsystem_count(), 0);
  for (int q : excited_qubits) {
    if (q < 0 || q >= layout.qubit_count())
      throw std::invalid_argument("initial_state: excited qubit index out of range");
    levels[q] = 1;
  }
  const int idx = layout.basis_index(levels);
  ComplexMatrix rho(layout.total_dim, layout.total_dim);
  rho(idx, idx) = 1.0;
  return DensityMatrix(std::move(rho));
}

cplx expectation(const ComplexMatrix& rho, const OperatorMatrix& op) {
  if (rho.rows() != op.dim())
    throw std::invalid_argument("expectation: dimension mismatch");
  return trace_of_product(rho, op.matrix());
}

cplx expectation(const DensityMatrix& rho, const OperatorMatrix& op) {
  return expectation(rho.matrix(), op);
}

double expectation_real(const DensityMatrix& rho, const OperatorMatrix& op) {
  if (op.tag() != OperatorTag::hermitian)
    throw std::invalid_argument("expectation_real: operator not hermitian-tagged");
  const cplx val = expectation(rho, op);
  const double scale = std::max(1.0, std::abs(val));
  if (std::abs(val.imag()) > 1e-10 * scale)
    throw std::invalid_argument("expectation_real: imaginary residue above 1e-10");
  return val.real();
}

}  // namespace acqsim

#include "acqsim/hamiltonian.hpp"

#include <cmath>
#include <stdexcept>

namespace acqsim {

double modulated_frequency(const SystemSpec& spec, const DriveParams& drive, int qubit_index,
                           double t) {
  if (qubit_index < 0 || qubit_index >= spec.qubit_count())
    throw std::invalid_argument("modulated_frequency: qubit index out of range");
  const double base = spec.qubit_detunings[qubit_index];
  const double amp = drive.amplitudes[qubit_index];
  if (amp == 0.0) return base;
  return base + amp * std::cos(drive.frequency * t + drive.phases[qubit_index]);
}

OperatorMatrix h_static(const SystemSpec& spec, const SpaceLayout& layout) {
  spec.validate();
  ComplexMatrix h(layout.total_dim, layout.total_dim);
  for (int i = 0; i < layout.qubit_count(); ++i) {
    h += spec.qubit_detunings[i] * cplx(1.0) * number_operator(layout, i).matrix();
  }
  h += cplx(-spec.cavity_detuning) * number_operator(layout, layout.cavity_index()).matrix();

  const ComplexMatrix a = lowering_operator(layout, layout.cavity_index()).matrix();
  const ComplexMatrix a_dag = a.dagger();
  for (int i = 0; i < layout.qubit_count(); ++i) {
    const ComplexMatrix sigma = lowering_operator(layout, i).matrix();
    h += cplx(spec.coupling_g) * (sigma * a_dag + sigma.dagger() * a);
  }
  return OperatorMatrix::hermitian(std::move(h));
}

OperatorMatrix h_at(const SystemSpec& spec, const DriveParams& drive, const SpaceLayout& layout,
                    double t) {
  drive.validate(spec.qubit_count());
  ComplexMatrix h = h_static(spec, layout).matrix();
  for (int i = 0; i < layout.qubit_count(); ++i) {
    const double shift = modulated_frequency(spec, drive, i, t) - spec.qubit_detunings[i];
    if (shift == 0.0) continue;
    h += cplx(shift) * number_operator(layout, i).matrix();
  }
  return OperatorMatrix::hermitian(std::move(h));
}

}  // namespace acqsim
